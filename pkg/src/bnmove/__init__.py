"""Classes and dimension counts for linear series with a moving ramification point."""

from .calculator import (
    common_factor_k,
    dimension_bound,
    existence,
    per_term_divergence,
    rho_classical,
    rho_fixed,
    rho_moving,
    w1d_closed_form,
    wrd_closed_form,
)
from .chow import ChowElement, PicClass
from .errors import BNError
from .problem import ClassResult, RamificationProblem
from .schubert import grassmann_pic_class, grd_class, lr_product
from .symbolic import symbolic_class

__all__ = [
    "BNError",
    "ChowElement",
    "ClassResult",
    "PicClass",
    "RamificationProblem",
    "common_factor_k",
    "dimension_bound",
    "existence",
    "grassmann_pic_class",
    "grd_class",
    "lr_product",
    "per_term_divergence",
    "rho_classical",
    "rho_fixed",
    "rho_moving",
    "symbolic_class",
    "w1d_closed_form",
    "wrd_closed_form",
]
