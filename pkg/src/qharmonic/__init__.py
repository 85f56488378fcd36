"""q-deformed diagonal harmonic polynomials for the groups G(m,p,n)."""

from .exactalg import CycElem, ExactMatrix, PoleAtQ0, QPoly, RatFuncQ, nullspace, specialize
from .groups import GroupElement, GroupSpec, NotStable, TooLarge, enumerate_group, graded_trace
from .harmonics import (
    BoundTooSmall,
    HarmonicQuery,
    HarmonicSpace,
    SingularQ,
    closed_form_n2,
    defining_ops,
    harmonic_component,
    harmonic_space,
    layer_decomposition,
    singular_scan,
)
from .operators import FORMAL, OpSpec, apply_D, apply_eps_power, apply_P
from .polyspace import MPoly, Shape
from .series import NotSymmetric, format_hbasis, hbasis_expression, hilbert_product_formula

__version__ = "0.1.0"

__all__ = [
    "BoundTooSmall", "CycElem", "ExactMatrix", "FORMAL", "GroupElement", "GroupSpec",
    "HarmonicQuery", "HarmonicSpace", "MPoly", "NotStable", "NotSymmetric", "OpSpec",
    "PoleAtQ0", "QPoly", "RatFuncQ", "Shape", "SingularQ", "TooLarge", "apply_D", "apply_P",
    "apply_eps_power", "closed_form_n2", "defining_ops", "enumerate_group", "format_hbasis",
    "graded_trace", "harmonic_component", "harmonic_space", "hbasis_expression",
    "hilbert_product_formula", "layer_decomposition", "nullspace", "singular_scan",
    "specialize",
]
