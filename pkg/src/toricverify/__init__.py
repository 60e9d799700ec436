"""Exact verification toolkit for toric fans, quotient singularities,
integer matrix groups, Molien counts and permutation-group combinatorics."""

__version__ = "0.1.0"
