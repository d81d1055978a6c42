"""Polynomial path orders: certificate synthesis, verification and empirical checks."""

__version__ = "0.1.0"
