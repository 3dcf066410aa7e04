"""Classical polynomials in (q, p) and the maps to and from operators."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Optional

from .algebra import OperatorPoly
from .calculus import poisson_sym
from .errors import EngineError
from .symmetrization import sym_product, weyl_closed_form

__all__ = [
    "ClassicalPoly", "c_multiply", "c_poisson", "quantize", "dequantize",
    "HomomorphismReport", "check_homomorphism", "cq", "cp", "ch", "cconst",
]


def _grlex(key):
    a, b, k = key
    return (-(a + b), -a, k)


class ClassicalPoly:
    """Commutative polynomial in ``q``, ``p`` with an extra grading by ``h``.

    Keys are ``(q_exp, p_exp, h_exp)``; the ``h`` grading is only populated
    by :func:`dequantize`.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping] = None):
        clean = {}
        for (a, b, k), c in (terms or {}).items():
            if min(a, b, k) < 0:
                raise EngineError("classical exponents must be nonnegative")
            if c:
                clean[(a, b, k)] = Fraction(c)
        self._terms = dict(sorted(clean.items(), key=lambda kv: _grlex(kv[0])))

    def items(self):
        return self._terms.items()

    def coefficient(self, a: int, b: int, k: int = 0) -> Fraction:
        return self._terms.get((a, b, k), Fraction(0))

    @property
    def h_free(self) -> bool:
        return all(k == 0 for _, _, k in self._terms)

    @property
    def degree(self) -> int:
        return max((a + b for a, b, _ in self._terms), default=0)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        other = _ccoerce(other)
        out = defaultdict(Fraction, self._terms)
        for key, c in other._terms.items():
            out[key] += c
        return ClassicalPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ClassicalPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_ccoerce(other))

    def __rsub__(self, other):
        return _ccoerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Rational):
            return ClassicalPoly({k: c * other for k, c in self._terms.items()})
        return c_multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise EngineError("powers must be nonnegative integers")
        result = cconst(1)
        for _ in range(n):
            result = result * self
        return result

    def d_dq(self) -> "ClassicalPoly":
        return ClassicalPoly({(a - 1, b, k): a * c for (a, b, k), c in self._terms.items() if a})

    def d_dp(self) -> "ClassicalPoly":
        return ClassicalPoly({(a, b - 1, k): b * c for (a, b, k), c in self._terms.items() if b})

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = cconst(other)
        if not isinstance(other, ClassicalPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        parts = []
        for i, ((a, b, k), c) in enumerate(self._terms.items()):
            factors = [s if e == 1 else f"{s}^{e}" for s, e in (("q", a), ("p", b), ("h", k)) if e]
            if abs(c) != 1 or not factors:
                factors.insert(0, str(abs(c)))
            sign = ("-" if c < 0 else "") if i == 0 else (" - " if c < 0 else " + ")
            parts.append(sign + " ".join(factors))
        return "".join(parts) or "0"

    def __repr__(self):
        return f"ClassicalPoly({self})"


def _ccoerce(x) -> ClassicalPoly:
    if isinstance(x, ClassicalPoly):
        return x
    if isinstance(x, Rational):
        return cconst(x)
    raise TypeError(f"cannot combine ClassicalPoly with {type(x).__name__}")


def cconst(c) -> ClassicalPoly:
    return ClassicalPoly({(0, 0, 0): c})


cq = ClassicalPoly({(1, 0, 0): 1})
cp = ClassicalPoly({(0, 1, 0): 1})
ch = ClassicalPoly({(0, 0, 1): 1})


def c_multiply(f: ClassicalPoly, g: ClassicalPoly) -> ClassicalPoly:
    out = defaultdict(Fraction)
    for (a1, b1, k1), c1 in f.items():
        for (a2, b2, k2), c2 in g.items():
            out[(a1 + a2, b1 + b2, k1 + k2)] += c1 * c2
    return ClassicalPoly(out)


def c_poisson(f: ClassicalPoly, g: ClassicalPoly) -> ClassicalPoly:
    """``{f, g} = df/dq dg/dp - df/dp dg/dq`` with ``{q, p} = 1``."""
    return c_multiply(f.d_dq(), g.d_dp()) - c_multiply(f.d_dp(), g.d_dq())


def quantize(f: ClassicalPoly) -> OperatorPoly:
    """Send ``q^a p^b`` to the symmetrized monomial ``q^a o p^b``, linearly."""
    if not f.h_free:
        raise EngineError("quantize expects an h-free classical polynomial")
    result = OperatorPoly()
    for (a, b, _), c in f.items():
        result = result + c * weyl_closed_form(a, b)
    return result


def dequantize(A: OperatorPoly) -> ClassicalPoly:
    """Invert ``sum c * h^k * quantize(q^n p^m)`` by peeling off top-degree terms.

    Each symmetrized monomial is its leading PBW word plus strictly
    lower-degree terms, so eliminating in descending degree is exact.
    """
    if not A.is_atom_free:
        raise EngineError("dequantize expects an atom-free operator")
    if A.min_h_exp < 0:
        raise EngineError("dequantize expects nonnegative powers of h")
    out = {}
    rest = A
    while rest:
        top = max(rest.terms(), key=lambda t: (len(t.word), -t.h_exp))
        n = sum(1 for g in top.word if g.kind == "Q")
        m = len(top.word) - n
        out[(n, m, top.h_exp)] = top.coeff
        rest = rest - top.coeff * weyl_closed_form(n, m).scale_h(top.h_exp)
    return ClassicalPoly(out)


@dataclass(frozen=True)
class HomomorphismReport:
    product_ok: bool
    bracket_ok: bool


def check_homomorphism(f: ClassicalPoly, g: ClassicalPoly) -> HomomorphismReport:
    if not (f.h_free and g.h_free):
        raise EngineError("homomorphism check expects h-free classical polynomials")
    qf, qg = quantize(f), quantize(g)
    return HomomorphismReport(
        product_ok=quantize(c_multiply(f, g)) == sym_product(qf, qg),
        bracket_ok=quantize(c_poisson(f, g)) == poisson_sym(qf, qg),
    )

