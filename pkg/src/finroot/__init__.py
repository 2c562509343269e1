"""Finite root systems over symplectic abelian groups and their graded Lie algebras."""

from __future__ import annotations

__version__ = "0.1.0"

from .abelian import FiniteAbelianGroup, GroupHom
from .cyclotomic import CyclotomicNumber
from .symplectic import Bicharacter, Cocycle, polarize, radical, split
from .rootsystem import RootSystem, find_isomorphism, reduce, transvection, verify, weyl_group
from .liealg import GradedLieAlgebra, build_full, build_root, check_jacobi, killing
from . import catalog

__all__ = [
    "Bicharacter",
    "Cocycle",
    "CyclotomicNumber",
    "FiniteAbelianGroup",
    "GradedLieAlgebra",
    "GroupHom",
    "RootSystem",
    "build_full",
    "build_root",
    "catalog",
    "check_jacobi",
    "find_isomorphism",
    "killing",
    "polarize",
    "radical",
    "reduce",
    "split",
    "transvection",
    "verify",
    "weyl_group",
]
