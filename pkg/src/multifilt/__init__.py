"""Finitely generated multifiltrations over preordered lattices."""

__version__ = "0.1.0"
