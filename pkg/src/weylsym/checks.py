"""Parameter sweeps that verify the algebraic theorems with the engine.

Each sweep returns a :class:`CheckResult` with one row per tested parameter
set, in a deterministic order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import OperatorPoly, monomial, normalize, p, q, Q, P
from .calculus import d_dp, d_dq, poisson_sym, theorem4_check
from .symmetrization import (
    check_identity,
    identity_parameters,
    pq_normal_expand,
    sym_product,
    symmetrize,
    weyl_closed_form,
    weyl_order,
)

CHECKS = ("theorem5", "theorem4", "lemma51", "lemma52", "identities", "prop1", "prop2", "prop3")

DEFAULT_BOUNDS = {
    "theorem5": (8, 8),
    "theorem4": (4, 4),
    "lemma51": (10, 10),
    "lemma52": (12, 12),
    "identities": (12, 12),
    "prop1": (4, 4),
    "prop2": (8, 6),
    "prop3": (6, 6),
}


@dataclass(frozen=True)
class CheckRow:
    label: str
    params: dict
    ok: bool
    detail: str = ""


@dataclass
class CheckResult:
    name: str
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failures(self) -> list:
        return [r for r in self.rows if not r.ok]

    def add(self, label, params, ok, detail=""):
        self.rows.append(CheckRow(label, dict(params), bool(ok), detail))

    def summary(self) -> str:
        n_ok = sum(r.ok for r in self.rows)
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {verdict} ({n_ok}/{len(self.rows)} cases hold)"


def check_theorem5(max_n=8, max_m=8) -> CheckResult:
    res = CheckResult("theorem5")
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            s = symmetrize(monomial(n, m))
            ok = s == weyl_order(n, m) == weyl_closed_form(n, m)
            res.add("S = O = closed form", {"n": n, "m": m}, ok)
    return res


def state_monomials(max_degree: int = 3) -> list:
    """PBW monomials ``q^a p^b`` with ``a + b <= max_degree``."""
    return [
        ((a, b), monomial(a, b))
        for d in range(max_degree + 1)
        for a in range(d, -1, -1)
        for b in [d - a]
    ]


def check_theorem4(max_n=4, max_m=4, state_degree=3) -> CheckResult:
    res = CheckResult("theorem4")
    states = state_monomials(state_degree)
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            H = weyl_closed_form(n, m)
            r = theorem4_check(H)
            res.add("atomic rho", {"n": n, "m": m, "rho": "rho"}, r.holds,
                    "" if r.holds else f"lhs - rhs = {r.lhs - r.rhs}")
            for (a, b), rho in states:
                r = theorem4_check(H, rho)
                res.add("concrete rho", {"n": n, "m": m, "rho": str(rho)}, r.holds,
                        "" if r.holds else f"lhs - rhs = {r.lhs - r.rhs}")
    return res


def check_lemma51(max_n=10, max_m=10) -> CheckResult:
    res = CheckResult("lemma51")
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            raw = normalize((P,) * m + (Q,) * n)
            res.add("(i2) p^m q^n", {"n": n, "m": m}, pq_normal_expand(m, n) == raw)
    for m in range(1, max_m + 1):
        lhs = normalize((P,) * m + (Q,))
        rhs = monomial(1, m) + monomial(0, m - 1, 1, m)
        res.add("(i1) p^m q", {"m": m}, lhs == rhs)
    return res


def _identity_sweep(title, names, max_n, max_m) -> CheckResult:
    res = CheckResult(title)
    for name in names:
        for params in identity_parameters(name, max_n, max_m):
            rep = check_identity(name, params)
            res.add(name, params, rep.holds, "" if rep.holds else f"{rep.lhs} != {rep.rhs}")
    return res


def check_lemma52(max_n=12, max_m=12) -> CheckResult:
    return _identity_sweep("lemma52", ("L52-i1", "L52-i2", "L52-i3", "L52-i4"), max_n, max_m)


def check_identities(max_n=12, max_m=12) -> CheckResult:
    return _identity_sweep("identities", ("id1", "id2"), max_n, max_m)


def _sym_monomial(a: int, b: int) -> OperatorPoly:
    return sym_product(monomial(a, 0), monomial(0, b))


def check_prop1(max_n=4, max_m=4) -> CheckResult:
    res = CheckResult("prop1")
    for a, c in product(range(max_n + 1), repeat=2):
        for b, d in product(range(max_m + 1), repeat=2):
            x, y = _sym_monomial(a, b), _sym_monomial(c, d)
            lhs = sym_product(x, y)
            params = {"a": a, "b": b, "c": c, "d": d}
            res.add("commutativity", params, lhs == sym_product(y, x))
            res.add("composition", params, lhs == _sym_monomial(a + c, b + d))
    return res


def random_rational(rng: random.Random, span: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def check_prop2(max_n=8, max_jk=6, samples=20, seed=0) -> CheckResult:
    res = CheckResult("prop2")
    rng = random.Random(seed)
    for s in range(samples):
        n = rng.randint(0, max_n)
        cs = [random_rational(rng) for _ in range(n + 1)]
        poly = sum((c * q ** j for j, c in enumerate(cs)), OperatorPoly())
        lhs = Fraction(1, 2) * (poly * p + p * poly)
        rhs = sum((c * sym_product(q ** j, p) for j, c in enumerate(cs)), OperatorPoly())
        res.add("(a) anticommutator", {"sample": s, "n": n}, lhs == rhs)
    for j in range(max_jk + 1):
        for k in range(max_jk + 1):
            x = _sym_monomial(j, k)
            ok_b = d_dq(x) == (j * _sym_monomial(j - 1, k) if j else OperatorPoly())
            ok_c = d_dp(x) == (k * _sym_monomial(j, k - 1) if k else OperatorPoly())
            res.add("(b) d/dq", {"j": j, "k": k}, ok_b)
            res.add("(c) d/dp", {"j": j, "k": k}, ok_c)
    return res


def check_prop3(max_n=6, max_m=6, max_degree=6, samples=100, seed=0) -> CheckResult:
    res = CheckResult("prop3")
    rng = random.Random(seed)
    pool = [
        (a, b)
        for a in range(max_n + 1)
        for b in range(max_m + 1)
        if a + b <= max_degree
    ]
    for s in range(samples):
        (a1, b1), (a2, b2), (a3, b3) = (rng.choice(pool) for _ in range(3))
        A, B, C = _sym_monomial(a1, b1), _sym_monomial(a2, b2), _sym_monomial(a3, b3)
        params = {"sample": s, "A": (a1, b1), "B": (a2, b2), "C": (a3, b3)}
        res.add("antisymmetry", params, poisson_sym(A, B) == -poisson_sym(B, A))
        jacobi = (
            poisson_sym(A, poisson_sym(B, C))
            + poisson_sym(B, poisson_sym(C, A))
            + poisson_sym(C, poisson_sym(A, B))
        )
        res.add("jacobi", params, not jacobi)
        leibniz = poisson_sym(A, sym_product(B, C)) == (
            sym_product(poisson_sym(A, B), C) + sym_product(B, poisson_sym(A, C))
        )
        res.add("leibniz", params, leibniz)
    return res


def run_check(name: str, max_n=None, max_m=None) -> CheckResult:
    dn, dm = DEFAULT_BOUNDS[name]
    max_n = dn if max_n is None else max_n
    max_m = dm if max_m is None else max_m
    fn = {
        "theorem5": check_theorem5,
        "theorem4": check_theorem4,
        "lemma51": check_lemma51,
        "lemma52": check_lemma52,
        "identities": check_identities,
        "prop1": check_prop1,
        "prop2": check_prop2,
        "prop3": check_prop3,
    }[name]
    return fn(max_n, max_m)
