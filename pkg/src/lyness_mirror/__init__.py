"""Exact computations for the Lyness recurrences and their cluster varieties."""

from __future__ import annotations

__version__ = "0.1.0"
