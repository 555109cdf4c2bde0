"""Rational function audit toolkit - Froissart doublet diagnostics."""

__version__ = "1.0.0"
