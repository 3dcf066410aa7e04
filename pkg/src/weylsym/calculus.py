"""Formal derivations, the symmetrized Poisson bracket and operator dynamics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    DP_RHO,
    DQ_RHO,
    P,
    Q,
    RHO,
    AtomClass,
    Generator,
    OperatorPoly,
    atom,
    commutator,
    letter,
    normalize,
    substitute_atom,
)
from .errors import EngineError
from .symmetrization import _raw_terms, sym_product, symmetrize

__all__ = [
    "d_dq", "d_dp", "poisson_sym", "Theorem4Report", "theorem4_check",
    "EvolutionSeries", "evolve_series", "in_symmetrized_span",
]


def _derive(x, gen: Generator) -> OperatorPoly:
    raw = []
    for coeff, h_exp, word in _raw_terms(x):
        if any(g.is_atom for g in word):
            raise EngineError("derivations are defined on atom-free input only")
        for i, g in enumerate(word):
            if g == gen:
                raw.append((coeff, h_exp, word[:i] + word[i + 1:]))
    return normalize(raw)


def d_dq(x) -> OperatorPoly:
    """Derivation with ``dq/dq = 1`` and ``dp/dq = dh/dq = 0`` (Leibniz over letters).

    Accepts raw ``(coeff, h_exp, word)`` triples as well as normal forms; the
    two agree because the derivation annihilates ``p q - q p - h``.
    """
    return _derive(x, Q)


def d_dp(x) -> OperatorPoly:
    return _derive(x, P)


def _state_atom(a: OperatorPoly):
    """Return ``(coeff, atom)`` if ``a`` is a rational multiple of one state atom."""
    if a.is_atom_free:
        return None
    terms = a.terms()
    if len(terms) == 1:
        t = terms[0]
        if t.h_exp == 0 and len(t.word) == 1 and t.word[0].atom_class is AtomClass.STATE:
            return t.coeff, t.word[0]
    raise EngineError("bracket operands must be atom-free or a single state atom")


def _partials(a: OperatorPoly):
    st = _state_atom(a)
    if st is None:
        return d_dq(a), d_dp(a)
    c, g = st
    return (
        c * letter(atom(g.name, AtomClass.DQ_STATE)),
        c * letter(atom(g.name, AtomClass.DP_STATE)),
    )


def poisson_sym(a: OperatorPoly, b: OperatorPoly) -> OperatorPoly:
    """``{a, b}_S = da/dq o db/dp - da/dp o db/dq``.

    A state atom operand contributes its derivative atoms ``dq(rho)`` and
    ``dp(rho)`` as opaque letters.
    """
    if not a.is_atom_free and not b.is_atom_free:
        raise EngineError("symmetrized bracket of two atomic operands is undefined")
    a_q, a_p = _partials(a)
    b_q, b_p = _partials(b)
    return sym_product(a_q, b_p) - sym_product(a_p, b_q)


def in_symmetrized_span(a: OperatorPoly) -> bool:
    """True when ``a`` is a combination of symmetrized monomials ``q^n o p^m``."""
    return a.is_atom_free and symmetrize(a) == a


@dataclass(frozen=True)
class Theorem4Report:
    holds: bool
    lhs: OperatorPoly
    rhs: OperatorPoly


def _inv_h_commutator(x: OperatorPoly, rho: OperatorPoly) -> OperatorPoly:
    return commutator(x, rho).scale_h(-1)


def theorem4_check(H: OperatorPoly, rho=None) -> Theorem4Report:
    """Compare ``{H, rho}_S`` with ``[H, rho] / (i hbar) = -h^-1 [H, rho]``.

    ``rho=None`` (or the state atom itself) means an atomic state; the
    derivative atoms are then replaced by ``dp(rho) -> -h^-1 [q, rho]`` and
    ``dq(rho) -> h^-1 [p, rho]`` before comparing.
    """
    if not in_symmetrized_span(H):
        raise EngineError("H must be a linear combination of symmetrized monomials q^n o p^m")
    atomic = rho is None or rho == letter(RHO)
    if atomic:
        rho = letter(RHO)
        lhs = poisson_sym(H, rho)
        lhs = substitute_atom(lhs, DP_RHO, -_inv_h_commutator(letter(Q), rho))
        lhs = substitute_atom(lhs, DQ_RHO, _inv_h_commutator(letter(P), rho))
    else:
        if not rho.is_atom_free:
            raise EngineError("a concrete state must be atom-free")
        lhs = poisson_sym(H, rho)
    rhs = -_inv_h_commutator(H, rho)
    return Theorem4Report(lhs == rhs, lhs, rhs)


@dataclass(frozen=True)
class EvolutionSeries:
    """Taylor data of ``rho(t)``: ``coefficients[k]`` multiplies ``t**k / k!``."""

    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def truncated(self, t) -> OperatorPoly:
        """Sum the series at a rational time ``t``."""
        t = Fraction(t)
        total = OperatorPoly()
        weight = Fraction(1)
        for k, c in enumerate(self.coefficients):
            if k:
                weight = weight * t / k
            total = total + weight * c
        return total


def evolve_series(H: OperatorPoly, rho0: OperatorPoly, order: int) -> EvolutionSeries:
    """Iterate ``d rho/dt = {H, rho}_S`` to build the order-``order`` Taylor data."""
    if order < 0:
        raise EngineError("order must be nonnegative")
    if not in_symmetrized_span(H):
        raise EngineError("H must be a linear combination of symmetrized monomials q^n o p^m")
    if not rho0.is_atom_free:
        raise EngineError("the initial state must be atom-free")
    coeffs = [rho0]
    for _ in range(order):
        coeffs.append(poisson_sym(H, coeffs[-1]))
    return EvolutionSeries(tuple(coeffs))
