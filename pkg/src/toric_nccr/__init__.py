"""Exact computations for non-commutative crepant resolutions of toric quotient singularities."""

__version__ = "0.1.0"
