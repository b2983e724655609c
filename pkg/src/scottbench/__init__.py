"""Computable Scott sentences for finitely generated groups, at desk scale."""
from __future__ import annotations

__version__ = "0.1.0"
