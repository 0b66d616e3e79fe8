"""Verifier for a tower of banded unipotent 2-groups over F2 and the
mixed Beauville structures they carry.

The package enumerates the groups from three explicit generators,
re-derives their orders and power periodicity, checks the structure
conditions with exact witnesses, and computes the invariants of the
associated surfaces.  A compiled kernel accelerates the block
convolution when available; the pure Python fallback computes byte
identical results.
"""

from ._kernel import KERNEL_NAME, available_kernels
from .band import (
    DiagTriple,
    GroupElement,
    elem_identity,
    elem_inv,
    elem_mul,
    format_element,
    parse_element,
    truncate,
)
from .beauville import (
    BeauvilleTriple,
    SigmaSet,
    check_A,
    check_B,
    check_Bprime,
    check_C,
    conj_scheme,
    key_elements,
    make_standard_triple,
    reality_check,
    sigma,
    sigma_T,
    transform,
    verify_power_forms,
)
from .errors import BudgetExceededError, DegenerateBracketError
from .groups import (
    DEFAULT_BUDGET,
    EnumeratedGroup,
    check_hom_extends,
    closure,
    element_order,
    group_order_ladder,
    make_generators,
    predicted_order,
)
from .surfaces import SurfaceInvariants, invariants

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "KERNEL_NAME",
    "available_kernels",
    "DiagTriple",
    "GroupElement",
    "elem_identity",
    "elem_mul",
    "elem_inv",
    "truncate",
    "format_element",
    "parse_element",
    "BudgetExceededError",
    "DegenerateBracketError",
    "DEFAULT_BUDGET",
    "EnumeratedGroup",
    "make_generators",
    "closure",
    "predicted_order",
    "group_order_ladder",
    "element_order",
    "check_hom_extends",
    "BeauvilleTriple",
    "make_standard_triple",
    "key_elements",
    "SigmaSet",
    "sigma",
    "sigma_T",
    "check_A",
    "check_B",
    "check_Bprime",
    "check_C",
    "conj_scheme",
    "verify_power_forms",
    "transform",
    "reality_check",
    "SurfaceInvariants",
    "invariants",
]
