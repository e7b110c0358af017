"""Disk automorphisms and finite models of their crossed-product algebras."""

from .errors import (
    ClassError,
    DiskCrossError,
    DomainError,
    KindMismatch,
    NumericalError,
    PoleError,
    RationalityRequired,
)
from .moebius import DiskAutomorphism, Kind, MoebiusWord, classify, fixed_points

__all__ = [
    "ClassError",
    "DiskAutomorphism",
    "DiskCrossError",
    "DomainError",
    "Kind",
    "KindMismatch",
    "MoebiusWord",
    "NumericalError",
    "PoleError",
    "RationalityRequired",
    "classify",
    "fixed_points",
]

__version__ = "0.1.0"
