import csv
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

from adiasweep.exceptions import ConfigurationError
from adiasweep.schemas.analysis import AlphaOptimum, FidelityRecord
from adiasweep.schemas.evolution import GapPoint, InstantaneousSample

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

GAP_COLUMNS = ["s", "e0", "e1", "gap"]
TRAJECTORY_COLUMNS = ["t", "s_or_wz", "fidelity_to_instantaneous_ground", "norm"]
SCAN_COLUMNS = ["model", "schedule", "T", "alpha", "fidelity"]
ALPHA_COLUMNS = ["T", "alpha_best", "fidelity_best"]


def fmt(value: Optional[float]) -> str:
    """Fixed %.12g rendering; None becomes an empty field."""
    if value is None:
        return ""
    return "%.12g" % value


class ExportService:
    """Writes command results as CSV: header row first, '#' comment lines, LF endings."""

    def _write(
        self,
        path: PathLike,
        columns: Sequence[str],
        rows: Iterable[Sequence[str]],
        comments: Sequence[str] = (),
    ) -> Path:
        out = Path(path)
        try:
            out.parent.mkdir(parents=True, exist_ok=True)
            with open(out, "w", encoding="utf-8", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(columns)
                count = 0
                for row in rows:
                    writer.writerow(row)
                    count += 1
                for comment in comments:
                    f.write(f"# {comment}\n")
        except OSError as e:
            logger.error(f"Failed to write {out}: {e}")
            raise
        logger.info(f"Wrote {count} rows to {out}", extra={"columns": list(columns)})
        return out

    def write_gap_csv(
        self, path: PathLike, points: List[GapPoint], s_c: float, gap_min: float
    ) -> Path:
        rows = ((fmt(p.s), fmt(p.e0), fmt(p.e1), fmt(p.gap)) for p in points)
        return self._write(
            path, GAP_COLUMNS, rows, comments=[f"s_c={fmt(s_c)} gap_min={fmt(gap_min)}"]
        )

    def write_trajectory_csv(self, path: PathLike, samples: List[InstantaneousSample]) -> Path:
        rows = (
            (fmt(x.t), fmt(x.parameter), fmt(x.fidelity), fmt(x.norm)) for x in samples
        )
        return self._write(path, TRAJECTORY_COLUMNS, rows)

    def write_scan_csv(self, path: PathLike, records: List[FidelityRecord]) -> Path:
        rows = (
            (r.model_id, r.schedule_id, fmt(r.T), fmt(r.alpha), fmt(r.fidelity)) for r in records
        )
        return self._write(path, SCAN_COLUMNS, rows)

    def write_alpha_csv(self, path: PathLike, optima: List[AlphaOptimum]) -> Path:
        rows = ((fmt(o.T), fmt(o.alpha_best), fmt(o.fidelity_best)) for o in optima)
        comments = [
            f"boundary T={fmt(o.T)} alpha_best={fmt(o.alpha_best)} lies at the alpha grid edge"
            for o in optima
            if o.at_boundary
        ]
        return self._write(path, ALPHA_COLUMNS, rows, comments=comments)

    def read_scan_csv(self, path: PathLike) -> List[FidelityRecord]:
        """Parse a scan CSV back into records, skipping '#' comment lines."""
        with open(path, "r", encoding="utf-8", newline="") as f:
            lines = [line for line in f if not line.startswith("#")]
        reader = csv.DictReader(lines)
        if reader.fieldnames != SCAN_COLUMNS:
            raise ConfigurationError(
                f"{path} is not a scan file: expected columns {SCAN_COLUMNS}, "
                f"got {reader.fieldnames}"
            )
        return [
            FidelityRecord(
                model_id=row["model"],
                schedule_id=row["schedule"],
                T=float(row["T"]),
                alpha=float(row["alpha"]) if row["alpha"] else None,
                fidelity=float(row["fidelity"]),
            )
            for row in reader
        ]
