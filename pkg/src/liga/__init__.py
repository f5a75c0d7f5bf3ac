"""LIGA: a rank-metric public-key encryption scheme and KEM."""

__version__ = "0.1.0"
