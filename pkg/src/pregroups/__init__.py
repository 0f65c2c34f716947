"""Finite pregroups: validation, word problems, fusion systems and localities."""

from .errors import (ConjugationDomainError, DomainError, FormatError, HypothesisError,
                     ResourceError)
from .groups import FiniteGroup, GroupHom, Subgroup
from .kernels import BACKEND
from .pregroup import PgSubgroup, Pregroup, validate_pregroup

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConjugationDomainError",
    "DomainError",
    "FiniteGroup",
    "FormatError",
    "GroupHom",
    "HypothesisError",
    "PgSubgroup",
    "Pregroup",
    "ResourceError",
    "Subgroup",
    "validate_pregroup",
]
