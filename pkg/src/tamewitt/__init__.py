"""Witt groups, transfers and endo-parameters for hermitian forms over tame p-adic fields."""

__version__ = "0.1.0"
