"""Symmetry-adapted state preparation and phase estimation on a dense simulator."""

__version__ = "0.1.0"
