"""Utility functions and helpers."""

from .output import Provenance, Table, format_cell, render_csv, render_json, write_output

__all__ = ["Provenance", "Table", "format_cell", "render_csv", "render_json", "write_output"]
