"""Exact enumeration, construction and probing of sign-pattern/root-count couples."""

from .couples import AdmissiblePair, Couple
from .poly import ExactPoly
from .signpat import SignPattern

__version__ = "0.1.0"
__all__ = ["AdmissiblePair", "Couple", "ExactPoly", "SignPattern"]
