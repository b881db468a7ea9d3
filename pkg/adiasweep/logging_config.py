import json
import logging
import sys
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, Union

from adiasweep.config import settings

LOGGER_NAME = "adiasweep"

# Attributes every LogRecord carries; anything else came in through `extra`
_RESERVED = set(logging.makeLogRecord({}).__dict__) | {"message", "asctime"}


class StructuredJSONFormatter(logging.Formatter):
    def format(self, record):
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "message": record.getMessage(),
            "logger": record.name,
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
            "thread": record.threadName,
        }
        for key, value in record.__dict__.items():
            if key not in _RESERVED and not key.startswith("_"):
                log_data[key] = value
        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)
        return json.dumps(log_data, default=str)


def setup_logging(
    level: Union[int, str, None] = None, log_dir: Optional[str] = None
) -> logging.Logger:
    """Configure the package logger: JSON on stderr plus an optional rotating file."""
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level if level is not None else settings.LOG_LEVEL)

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    # stdout carries command results, so logs go to stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(StructuredJSONFormatter())
    logger.addHandler(console_handler)

    log_dir = settings.LOG_DIR if log_dir is None else log_dir
    if log_dir:
        logs_path = Path(log_dir)
        logs_path.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            filename=logs_path / "adiasweep.log",
            maxBytes=5 * 1024 * 1024,  # 5 MB
            backupCount=5,
            encoding="utf-8",
        )
        file_handler.setFormatter(StructuredJSONFormatter())
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger
