"""Symmetrized product, symmetrized Poisson bracket and Weyl ordering in the
enveloping algebra of the Heisenberg algebra, in exact rational arithmetic."""

from .algebra import (
    DP_RHO,
    DQ_RHO,
    P,
    Q,
    RHO,
    AtomClass,
    Generator,
    OperatorPoly,
    Term,
    atom,
    commutator,
    equals,
    h,
    hermitian_adjoint,
    letter,
    monomial,
    multiply,
    normalize,
    one,
    p,
    q,
    scalar,
    substitute_atom,
    zero,
)
from .calculus import EvolutionSeries, d_dp, d_dq, evolve_series, poisson_sym, theorem4_check
from .errors import EngineError, ParseError
from .formatting import format_poly, parse_json
from .parser import evaluate, parse
from .quantization import (
    ClassicalPoly,
    c_multiply,
    c_poisson,
    check_homomorphism,
    dequantize,
    quantize,
)
from .symmetrization import (
    ArrangementSpec,
    alpha,
    arrangements,
    check_identity,
    pq_normal_expand,
    sym_product,
    symmetrize,
    weyl_closed_form,
    weyl_order,
)

__version__ = "0.1.0"

__all__ = [
    "DP_RHO",
    "DQ_RHO",
    "P",
    "Q",
    "RHO",
    "AtomClass",
    "Generator",
    "OperatorPoly",
    "Term",
    "atom",
    "commutator",
    "equals",
    "h",
    "hermitian_adjoint",
    "letter",
    "monomial",
    "multiply",
    "normalize",
    "one",
    "p",
    "q",
    "scalar",
    "substitute_atom",
    "zero",
    "ClassicalPoly",
    "c_multiply",
    "c_poisson",
    "check_homomorphism",
    "dequantize",
    "quantize",
    "ArrangementSpec",
    "alpha",
    "arrangements",
    "check_identity",
    "pq_normal_expand",
    "sym_product",
    "symmetrize",
    "weyl_closed_form",
    "weyl_order",
    "EvolutionSeries",
    "d_dp",
    "d_dq",
    "evolve_series",
    "poisson_sym",
    "theorem4_check",
    "EngineError",
    "ParseError",
    "format_poly",
    "parse_json",
    "evaluate",
    "parse",
    "__version__",
]
