"""
Cubic residuacity of real quadratic integers u = A + B sqrt(D) with cube
norm, decided class by class on the form class group H(4d), d = -27 C^2 D.
"""
from .eisenstein import CubicSymbol, EisensteinInt, cubic_symbol, cubic_symbol_oracle
from .qform import QuadForm, class_group, compose, reduce
from .sdelem import InvalidElement, SdElement, validate
from .residuacity import compute_L, compute_R, oracle_is_cubic, theorem11_check
from .classmap import ClassReport, classify, compute_J, kernel_G, subgroup_h2

__version__ = "0.1.0"

__all__ = [
    "CubicSymbol", "EisensteinInt", "cubic_symbol", "cubic_symbol_oracle",
    "QuadForm", "class_group", "compose", "reduce",
    "InvalidElement", "SdElement", "validate",
    "compute_L", "compute_R", "oracle_is_cubic", "theorem11_check",
    "ClassReport", "classify", "compute_J", "kernel_G", "subgroup_h2",
]
