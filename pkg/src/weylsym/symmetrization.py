"""The symmetrizer, the symmetrized product and Weyl ordering.

``symmetrize`` averages a monomial uniformly over every distinct ordering of
its ``q``/``p`` letters (plus at most one derivative atom), kills monomials
that carry a positive power of ``h``, and leaves ``A*rho`` / ``rho*A``
untouched.  ``weyl_order`` and ``weyl_closed_form`` are two further routes
to the same polynomial, and ``check_identity`` evaluates the binomial
identities that link them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, perm
from typing import Iterator, Optional

from .algebra import (
    P,
    Q,
    AtomClass,
    Generator,
    OperatorPoly,
    multiply,
    normalize,
)
from .errors import EngineError

__all__ = [
    "ArrangementSpec", "arrangements", "symmetrize", "sym_product", "weyl_order",
    "weyl_closed_form", "alpha", "pq_normal_expand", "IdentityReport",
    "check_identity", "IDENTITIES", "identity_parameters",
]


@dataclass(frozen=True)
class ArrangementSpec:
    n_q: int
    n_p: int
    atom: Optional[Generator] = None

    def __post_init__(self):
        if self.n_q < 0 or self.n_p < 0:
            raise EngineError("letter counts must be nonnegative")
        if self.atom is not None and self.atom.atom_class not in (
            AtomClass.DQ_STATE,
            AtomClass.DP_STATE,
        ):
            raise EngineError("only derivative atoms are permuted with q and p")

    @property
    def count(self) -> int:
        a = 0 if self.atom is None else 1
        return factorial(self.n_q + self.n_p + a) // (
            factorial(self.n_q) * factorial(self.n_p) * factorial(a)
        )


def _multiset_permutations(letters: list) -> Iterator[tuple]:
    """Distinct permutations in lexicographic order (Narayana's next-permutation)."""
    seq = sorted(letters, key=lambda g: g.sort_key)
    keys = [g.sort_key for g in seq]
    n = len(seq)
    while True:
        yield tuple(seq)
        i = n - 2
        while i >= 0 and keys[i] >= keys[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while keys[j] <= keys[i]:
            j -= 1
        keys[i], keys[j] = keys[j], keys[i]
        seq[i], seq[j] = seq[j], seq[i]
        keys[i + 1:] = keys[:i:-1]
        seq[i + 1:] = seq[:i:-1]


def arrangements(spec: ArrangementSpec) -> list:
    letters = [Q] * spec.n_q + [P] * spec.n_p
    if spec.atom is not None:
        letters.append(spec.atom)
    return list(_multiset_permutations(letters))


@lru_cache(maxsize=512)
def _average(n_q: int, n_p: int, atom: Optional[Generator] = None) -> OperatorPoly:
    spec = ArrangementSpec(n_q, n_p, atom)
    weight = Fraction(1, spec.count)
    return normalize([(weight, 0, w) for w in arrangements(spec)])


def _raw_terms(x):
    if isinstance(x, OperatorPoly):
        return [(t.coeff, t.h_exp, t.word) for t in x]
    if isinstance(x, tuple) and all(isinstance(g, Generator) for g in x):
        return [(1, 0, x)]
    return [(Fraction(c), k, tuple(w)) for c, k, w in x]


def symmetrize(x) -> OperatorPoly:
    """Apply the symmetrizer linearly, term by term.

    ``x`` is an :class:`OperatorPoly`, a bare word, or a list of raw
    ``(coeff, h_exp, word)`` triples; raw words are symmetrized as written,
    without normalizing first.
    """
    result = OperatorPoly()
    for coeff, h_exp, word in _raw_terms(x):
        atoms = [g for g in word if g.is_atom]
        if len(atoms) > 1:
            raise EngineError("symmetrizer undefined for multi-atom words")
        n_q = sum(1 for g in word if g.kind == "Q")
        n_p = len(word) - n_q - len(atoms)
        if atoms and atoms[0].atom_class is AtomClass.STATE:
            if word[0] != atoms[0] and word[-1] != atoms[0]:
                raise EngineError("symmetrizer undefined for a state atom inside a word")
            result = result + normalize([(coeff, h_exp, word)])
            continue
        if h_exp > 0:
            continue
        if h_exp < 0:
            raise EngineError("symmetrizer undefined for negative powers of h")
        result = result + coeff * _average(n_q, n_p, atoms[0] if atoms else None)
    return result


def sym_product(a: OperatorPoly, b: OperatorPoly) -> OperatorPoly:
    return symmetrize(multiply(a, b))


def weyl_order(n: int, m: int) -> OperatorPoly:
    """``2**-n * sum_k C(n,k) q^(n-k) p^m q^k`` brought to normal form."""
    _check_nonneg(n=n, m=m)
    return normalize(
        (Fraction(comb(n, k), 2 ** n), 0, (Q,) * (n - k) + (P,) * m + (Q,) * k)
        for k in range(n + 1)
    )


def alpha(n: int, m: int, j: int) -> Fraction:
    """Normal-form coefficient of ``q^(n-j) p^(m-j) h^j`` in the Weyl-ordered ``q^n p^m``."""
    if j < 0 or j > min(n, m):
        return Fraction(0)
    return Fraction(comb(n, j) * comb(m, j) * factorial(j), 2 ** j)


def weyl_closed_form(n: int, m: int) -> OperatorPoly:
    _check_nonneg(n=n, m=m)
    return OperatorPoly(
        {(j, (Q,) * (n - j) + (P,) * (m - j)): alpha(n, m, j) for j in range(min(n, m) + 1)}
    )


def pq_normal_expand(m: int, n: int) -> OperatorPoly:
    """Normal form of ``p^m q^n`` from the closed binomial formula."""
    _check_nonneg(n=n, m=m)
    return OperatorPoly(
        {
            (k, (Q,) * (n - k) + (P,) * (m - k)): comb(n, k) * comb(m, k) * factorial(k)
            for k in range(min(n, m) + 1)
        }
    )


def _check_nonneg(**params):
    for key, value in params.items():
        if not isinstance(value, int) or value < 0:
            raise EngineError(f"parameter {key} must be a nonnegative integer, got {value!r}")


# --- identity catalog -----------------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    name: str
    params: dict
    holds: bool
    lhs: Fraction
    rhs: Fraction


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def _id1(n, k):
    return _binom(n, k) + _binom(n, k - 1), _binom(n + 1, k)


def _id2(n, j):
    lhs = sum(_binom(n, k) * _binom(k, j) * factorial(j) for k in range(n + 1))
    return lhs, Fraction(2) ** (n - j) * (perm(n, j) if j <= n else 0)


def _i1(n, m):
    return sum(_binom(n + m - k, m) for k in range(n + 1)), _binom(n + m + 1, n)


def _i2(n, m):
    return sum(k * _binom(n + m - k, m) for k in range(1, n + 1)), _binom(n + m + 1, n - 1)


def _i3(n, m, i):
    lhs = sum(_binom(k, i) * _binom(m + k, m) for k in range(i, n + 1))
    return lhs, Fraction(_binom(n + m + 1, n) * _binom(n, i) * (m + 1), m + 1 + i)


def _i4(n, m, j):
    # The binomial on the right is C(n+m+1, n): the normalizer of S(q^n p^(m+1)).
    lhs = sum(
        _binom(n - k + m, m) * (alpha(n - k, m, j + 1) + (n - k - j) * alpha(n - k, m, j))
        for k in range(n + 1)
    )
    return lhs, _binom(n + m + 1, n) * alpha(n, m + 1, j + 1)


_CATALOG = {
    "id1": (("n", "k"), _id1),
    "id2": (("n", "j"), _id2),
    "L52-i1": (("n", "m"), _i1),
    "L52-i2": (("n", "m"), _i2),
    "L52-i3": (("n", "m", "i"), _i3),
    "L52-i4": (("n", "m", "j"), _i4),
}

IDENTITIES = tuple(_CATALOG)


def check_identity(name: str, params: dict) -> IdentityReport:
    """Evaluate both sides of a named binomial identity exactly."""
    if name not in _CATALOG:
        raise EngineError(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)}")
    keys, fn = _CATALOG[name]
    missing = [k for k in keys if k not in params]
    if missing:
        raise EngineError(f"identity {name} needs parameters {', '.join(missing)}")
    values = {k: params[k] for k in keys}
    _check_nonneg(**values)
    if name == "id1" and values["k"] > values["n"]:
        raise EngineError("id1 requires k <= n")
    if name == "L52-i3" and values["i"] > values["n"]:
        raise EngineError("L52-i3 requires i <= n")
    lhs, rhs = fn(*values.values())
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return IdentityReport(name, values, lhs == rhs, lhs, rhs)


def identity_parameters(name: str, max_n: int, max_m: int) -> Iterator[dict]:
    """Every admissible parameter set with ``n <= max_n`` and ``m <= max_m``."""
    for n in range(max_n + 1):
        if name == "id1":
            for k in range(n + 1):
                yield {"n": n, "k": k}
        elif name == "id2":
            for j in range(n + 2):
                yield {"n": n, "j": j}
        else:
            for m in range(max_m + 1):
                if name == "L52-i3":
                    for i in range(n + 1):
                        yield {"n": n, "m": m, "i": i}
                elif name == "L52-i4":
                    for j in range(max(n, m) + 2):
                        yield {"n": n, "m": m, "j": j}
                else:
                    yield {"n": n, "m": m}
