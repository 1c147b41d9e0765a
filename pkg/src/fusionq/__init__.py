"""fusionq: exact Shapovalov forms, reduced fusion elements and equivariant
star products for finite-dimensional complex semisimple Lie algebras."""

from .rootsys import RootSystem, UnsupportedAlgebraError, build_root_system, genericity_report, pair
from .scalars import QQ, FunctionField, line_field, weight_field
from .uea import PBWElem, UEA

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "FunctionField",
    "PBWElem",
    "RootSystem",
    "UEA",
    "UnsupportedAlgebraError",
    "build_root_system",
    "genericity_report",
    "line_field",
    "pair",
    "weight_field",
    "__version__",
]
