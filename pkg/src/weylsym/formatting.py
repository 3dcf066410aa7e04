"""Text and JSON renderings of :class:`OperatorPoly` values."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from itertools import groupby

from .algebra import P, Q, AtomClass, OperatorPoly, atom
from .errors import EngineError

_ATOM_RE = re.compile(r"^(dq|dp)\((\w+)\)$")


def _runs(word):
    return [(g, len(list(grp))) for g, grp in groupby(word)]


def _power(symbol: str, e: int) -> str:
    return symbol if e == 1 else f"{symbol}^{e}"


def _term_text(coeff: Fraction, h_exp: int, word) -> str:
    factors = [_power(str(g), e) for g, e in _runs(word)]
    if h_exp:
        factors.append(_power("h", h_exp))
    mag = abs(coeff)
    if mag != 1 or not factors:
        factors.insert(0, str(mag))
    return " ".join(factors)


def format_text(a: OperatorPoly) -> str:
    """Render as ``coeff q^n p^m h^k`` terms joined by `` + `` / `` - ``."""
    parts = []
    for i, t in enumerate(a.terms()):
        body = _term_text(t.coeff, t.h_exp, t.word)
        if i == 0:
            parts.append(("-" if t.coeff < 0 else "") + body)
        else:
            parts.append((" - " if t.coeff < 0 else " + ") + body)
    return "".join(parts) or "0"


def _coeff_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def to_data(a: OperatorPoly) -> dict:
    return {
        "terms": [
            {
                "coeff": _coeff_str(t.coeff),
                "h": t.h_exp,
                "word": [{"g": str(g), "e": e} for g, e in _runs(t.word)],
            }
            for t in a.terms()
        ]
    }


def format_json(a: OperatorPoly) -> str:
    return json.dumps(to_data(a))


def format_poly(a: OperatorPoly, mode: str = "text") -> str:
    if mode == "text":
        return format_text(a)
    if mode == "json":
        return format_json(a)
    raise EngineError(f"unknown format mode {mode!r}")


def _generator(name: str):
    if name == "q":
        return Q
    if name == "p":
        return P
    m = _ATOM_RE.match(name)
    if m:
        cls = AtomClass.DQ_STATE if m.group(1) == "dq" else AtomClass.DP_STATE
        return atom(m.group(2), cls)
    if re.fullmatch(r"\w+", name):
        return atom(name)
    raise EngineError(f"unknown generator {name!r} in JSON input")


def from_data(data: dict) -> OperatorPoly:
    from .algebra import normalize

    raw = []
    for term in data["terms"]:
        word = []
        for letter in term["word"]:
            word.extend([_generator(letter["g"])] * int(letter["e"]))
        raw.append((Fraction(term["coeff"]), int(term["h"]), tuple(word)))
    return normalize(raw)


def parse_json(text: str) -> OperatorPoly:
    return from_data(json.loads(text))
