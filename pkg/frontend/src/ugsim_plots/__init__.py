"""Grouped-bar chart rendering for ugsim sweep summary CSVs."""

from .render import REQUIRED_COLUMNS, SchemaError, load_sweep, render

__all__ = ["REQUIRED_COLUMNS", "SchemaError", "load_sweep", "render"]
