"""Exact computer algebra for homogenized Weyl algebras, skew group algebras and McKay quivers."""

__version__ = "0.1.0"
