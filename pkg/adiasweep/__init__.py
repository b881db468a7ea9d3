"""Adiabatic sweep-schedule simulator and optimizer."""

__version__ = "1.0.0"
