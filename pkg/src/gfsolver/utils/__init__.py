"""Utility functions for gfsolver."""

from gfsolver.utils.config_file import parse_config
from gfsolver.utils.formatters import config_hash, format_error, write_field_csv

__all__ = [
    "parse_config",
    "config_hash",
    "format_error",
    "write_field_csv",
]
