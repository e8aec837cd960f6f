"""Exact arithmetic, verification and construction of k-nets of lines in P^2."""

from .errors import KNetError
from .field import QQ, NumberField, Scalar, make_cyclotomic_field, make_quadratic_field
from .geometry import ProjLine, ProjPoint, join, line, meet, point
from .latin import LatinSquare, canonical_form, is_group_isotopic
from .net import KNetConfig, complete_net, verify_net

__version__ = "0.1.0"

__all__ = [
    "KNetError",
    "QQ",
    "NumberField",
    "Scalar",
    "make_cyclotomic_field",
    "make_quadratic_field",
    "ProjLine",
    "ProjPoint",
    "join",
    "line",
    "meet",
    "point",
    "LatinSquare",
    "canonical_form",
    "is_group_isotopic",
    "KNetConfig",
    "complete_net",
    "verify_net",
]
