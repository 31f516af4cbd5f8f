"""Exact computations in the Jordanian algebra k<x,y>/(xy - yx - y^2)."""

from .errors import JordanianError
from .exact import Partition, QMat
from .freealg import Automorphism, NCPoly, NormalPoly, normal_form, parse_ncpoly
from .repspace import Rep, build_epsilon, build_from_partition, build_full_block, validate_rep

__all__ = [
    "Automorphism",
    "JordanianError",
    "NCPoly",
    "NormalPoly",
    "Partition",
    "QMat",
    "Rep",
    "build_epsilon",
    "build_from_partition",
    "build_full_block",
    "normal_form",
    "parse_ncpoly",
    "validate_rep",
]
