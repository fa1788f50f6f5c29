"""Exact-arithmetic homological invariants of path algebras and triangular matrix rings."""

__version__ = "0.1.0"
