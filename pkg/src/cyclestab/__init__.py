"""Stability of long-cycle extremal graphs: constructions, recognizers, and verification sweeps."""

__version__ = "0.1.0"
