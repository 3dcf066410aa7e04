"""Exact arithmetic in the enveloping algebra of the Heisenberg algebra.

Elements are finite sums of terms ``coeff * h**k * w`` where ``w`` is a word
in the noncommuting generators ``q``, ``p`` and opaque atoms (the state
``rho`` and its formal derivatives).  The central element ``h = -i*hbar``
is kept as an integer exponent so every coefficient stays rational.

The single rewrite rule is ``p q -> q p + h``, applied only inside maximal
runs of ``q``/``p`` letters; atoms commute with nothing.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Union

from .errors import EngineError

__all__ = [
    "AtomClass", "Generator", "Q", "P", "RHO", "DQ_RHO", "DP_RHO", "atom",
    "Term", "OperatorPoly", "normalize", "multiply", "commutator",
    "hermitian_adjoint", "substitute_atom", "equals",
    "q", "p", "h", "one", "zero", "scalar", "monomial", "letter",
]


class AtomClass(enum.Enum):
    STATE = 0
    DQ_STATE = 1
    DP_STATE = 2


@dataclass(frozen=True)
class Generator:
    """A letter of a word: ``Q``, ``P`` or a named atom."""

    kind: str
    name: str = ""
    atom_class: Optional[AtomClass] = None

    def __post_init__(self):
        if self.kind in ("Q", "P"):
            if self.name or self.atom_class is not None:
                raise EngineError("Q and P generators carry no payload")
        elif self.kind == "Atom":
            if not self.name or self.atom_class is None:
                raise EngineError("an atom needs a nonempty name and an atom class")
        else:
            raise EngineError(f"unknown generator kind {self.kind!r}")

    @property
    def is_atom(self) -> bool:
        return self.kind == "Atom"

    @property
    def sort_key(self):
        if self.kind == "Q":
            return (0, "", 0)
        if self.kind == "P":
            return (1, "", 0)
        return (2, self.name, self.atom_class.value)

    def __str__(self):
        if self.kind == "Q":
            return "q"
        if self.kind == "P":
            return "p"
        if self.atom_class is AtomClass.DQ_STATE:
            return f"dq({self.name})"
        if self.atom_class is AtomClass.DP_STATE:
            return f"dp({self.name})"
        return self.name

    def __repr__(self):
        return f"Generator({self})"


def atom(name: str = "rho", atom_class: AtomClass = AtomClass.STATE) -> Generator:
    return Generator("Atom", name, atom_class)


Q = Generator("Q")
P = Generator("P")
RHO = atom()
DQ_RHO = atom("rho", AtomClass.DQ_STATE)
DP_RHO = atom("rho", AtomClass.DP_STATE)

Word = tuple  # tuple[Generator, ...]
Coefficient = Union[int, Fraction, Rational]


class Term(NamedTuple):
    coeff: Fraction
    h_exp: int
    word: Word


def _word_key(word: Word):
    return (len(word), tuple(g.sort_key for g in word))


def _term_key(key):
    h_exp, word = key
    return (h_exp,) + _word_key(word)


# --- rewriting inside a q/p run -------------------------------------------------

_MEMO_LIMIT = 256


def _append(terms: Mapping, letters: str) -> dict:
    """Right-multiply a normal-form run by ``letters``, one rewrite step at a time."""
    current = dict(terms)
    for ch in letters:
        nxt = defaultdict(int)
        if ch == "p":
            for (a, b, k), c in current.items():
                nxt[(a, b + 1, k)] += c
        else:
            for (a, b, k), c in current.items():
                # q^a p^b q: move q left past each p; every step p q -> q p + h
                # leaves an h-branch q^a p^(b-1) h^(k+1).
                for _ in range(b):
                    nxt[(a, b - 1, k + 1)] += c
                nxt[(a + 1, b, k)] += c
        current = nxt
    return current


@lru_cache(maxsize=1 << 17)
def _run_nf_cached(run: str) -> tuple:
    if not run:
        return (((0, 0, 0), 1),)
    prefix = dict(_run_nf_cached(run[:-1]))
    return tuple(_append(prefix, run[-1]).items())


def _run_normal_form(run: str) -> tuple:
    """PBW normal form of a q/p string as ``((a, b, k), count)`` pairs."""
    if len(run) <= _MEMO_LIMIT:
        return _run_nf_cached(run)
    head = dict(_run_nf_cached(run[:_MEMO_LIMIT]))
    return tuple(_append(head, run[_MEMO_LIMIT:]).items())


def _split(word: Word) -> list:
    """Split a word into q/p run strings and atom letters, in order."""
    pieces = []
    run = []
    for g in word:
        if g.is_atom:
            pieces.append("".join(run))
            pieces.append(g)
            run = []
        elif g.kind == "Q":
            run.append("q")
        else:
            run.append("p")
    pieces.append("".join(run))
    return pieces


def _normal_word(word: Word) -> list:
    """Expand one raw word into ``(count, h_exp, normal_word)`` triples."""
    expansions = [(1, 0, ())]
    for piece in _split(word):
        if isinstance(piece, Generator):
            expansions = [(c, k, w + (piece,)) for c, k, w in expansions]
        elif piece:
            nf = _run_normal_form(piece)
            expansions = [
                (c * c2, k + k2, w + (Q,) * a + (P,) * b)
                for c, k, w in expansions
                for (a, b, k2), c2 in nf
            ]
    return expansions


class OperatorPoly:
    """An immutable element of the algebra, kept in PBW normal form.

    Build values with :func:`normalize` or the module-level constructors
    (``q``, ``p``, ``h``, ``scalar``...) and combine them with ``+``, ``-``,
    ``*`` (ordinary product) and ``**``.
    """

    __slots__ = ("_terms", "_items", "_hash")

    def __init__(self, terms: Optional[Mapping] = None):
        # Trusted constructor: keys must already be (h_exp, normal word).
        clean = {}
        for key, c in (terms or {}).items():
            if c:
                clean[key] = Fraction(c)
        self._terms = clean
        self._items = tuple(
            Term(clean[key], key[0], key[1]) for key in sorted(clean, key=_term_key)
        )
        self._hash = None

    # --- construction -------------------------------------------------------

    @classmethod
    def from_raw(cls, raw: Iterable) -> "OperatorPoly":
        return normalize(raw)

    # --- inspection ---------------------------------------------------------

    def terms(self) -> tuple:
        """Terms in canonical order (ascending h power, length, letters)."""
        return self._items

    def __iter__(self) -> Iterator[Term]:
        return iter(self._items)

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)

    def coefficient(self, word: Word, h_exp: int = 0) -> Fraction:
        return self._terms.get((h_exp, tuple(word)), Fraction(0))

    @property
    def is_atom_free(self) -> bool:
        return not any(g.is_atom for t in self._items for g in t.word)

    def atoms(self) -> set:
        return {g for t in self._items for g in t.word if g.is_atom}

    @property
    def degree(self) -> int:
        """Largest number of q/p letters in any term (0 for the zero polynomial)."""
        return max((sum(1 for g in t.word if not g.is_atom) for t in self._items), default=0)

    @property
    def min_h_exp(self) -> int:
        return min((t.h_exp for t in self._items), default=0)

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = defaultdict(Fraction, self._terms)
        for key, c in other._terms.items():
            out[key] += c
        return OperatorPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return OperatorPoly({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, OperatorPoly):
            return multiply(self, other)
        if isinstance(other, Rational):
            return OperatorPoly({key: c * other for key, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division of an OperatorPoly by zero")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise EngineError("powers must be nonnegative integers")
        result = one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale_h(self, k: int) -> "OperatorPoly":
        """Multiply by ``h**k`` (``k`` may be negative)."""
        return OperatorPoly({(e + k, w): c for (e, w), c in self._terms.items()})

    # --- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = scalar(other)
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        from .formatting import format_text

        return format_text(self)

    def __repr__(self):
        return f"OperatorPoly({self})"


def _coerce(x):
    if isinstance(x, OperatorPoly):
        return x
    if isinstance(x, Rational):
        return scalar(x)
    return NotImplemented


def normalize(raw: Iterable) -> OperatorPoly:
    """Canonical PBW form of a formal sum of ``(coeff, h_exp, word)`` triples.

    A bare word (tuple of generators) is accepted as shorthand for a single
    term with coefficient 1.
    """
    if isinstance(raw, OperatorPoly):
        return raw
    if isinstance(raw, tuple) and all(isinstance(g, Generator) for g in raw):
        raw = [(1, 0, raw)]
    out = defaultdict(Fraction)
    for coeff, h_exp, word in raw:
        coeff = Fraction(coeff)
        if not coeff:
            continue
        for count, k, w in _normal_word(tuple(word)):
            out[(h_exp + k, w)] += coeff * count
    return OperatorPoly(out)


def multiply(a: OperatorPoly, b: OperatorPoly) -> OperatorPoly:
    out = defaultdict(Fraction)
    for ta in a:
        for tb in b:
            c = ta.coeff * tb.coeff
            for count, k, w in _normal_word(ta.word + tb.word):
                out[(ta.h_exp + tb.h_exp + k, w)] += c * count
    return OperatorPoly(out)


def commutator(a: OperatorPoly, b: OperatorPoly) -> OperatorPoly:
    return multiply(a, b) - multiply(b, a)


def hermitian_adjoint(a: OperatorPoly) -> OperatorPoly:
    """Reverse every word; ``h`` is anti-Hermitian so each power flips the sign."""
    raw = []
    for t in a:
        if any(g.is_atom and g.atom_class is not AtomClass.STATE for g in t.word):
            raise EngineError("adjoint of a derivative atom is undefined")
        sign = -1 if t.h_exp % 2 else 1
        raw.append((sign * t.coeff, t.h_exp, t.word[::-1]))
    return normalize(raw)


def substitute_atom(a: OperatorPoly, which: Generator, replacement: OperatorPoly) -> OperatorPoly:
    """Replace every occurrence of the atom letter ``which`` by ``replacement``."""
    if not which.is_atom:
        raise EngineError("only atom letters can be substituted")
    raw = []
    for t in a:
        partial = [(t.coeff, t.h_exp, ())]
        for g in t.word:
            if g == which:
                partial = [
                    (c * r.coeff, k + r.h_exp, w + r.word)
                    for c, k, w in partial
                    for r in replacement
                ]
            else:
                partial = [(c, k, w + (g,)) for c, k, w in partial]
        raw.extend(partial)
    return normalize(raw)


def equals(a: OperatorPoly, b: OperatorPoly) -> bool:
    return a == b


# --- constructors ------------------------------------------------------------------


def zero() -> OperatorPoly:
    return OperatorPoly()


def scalar(c: Coefficient, h_exp: int = 0) -> OperatorPoly:
    return OperatorPoly({(h_exp, ()): Fraction(c)})


def one() -> OperatorPoly:
    return scalar(1)


def letter(g: Generator) -> OperatorPoly:
    return OperatorPoly({(0, (g,)): Fraction(1)})


def monomial(n: int, m: int, k: int = 0, coeff: Coefficient = 1) -> OperatorPoly:
    """``coeff * q**n p**m h**k``, already in normal form."""
    if n < 0 or m < 0:
        raise EngineError("monomial exponents of q and p must be nonnegative")
    return OperatorPoly({(k, (Q,) * n + (P,) * m): Fraction(coeff)})


q = letter(Q)
p = letter(P)
h = scalar(1, 1)
