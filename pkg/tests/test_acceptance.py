"""Acceptance criteria 1-12, each at its stated tolerance and time budget.

Every test prints one ``criterion N: PASS|FAIL ...`` line (visible with ``-s``)
and the same lines are repeated in the terminal summary.
"""

import random
import time
from fractions import Fraction
from itertools import permutations
from math import comb
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from rewrite_oracle import poly_dict, symmetrize_oracle, to_word
from weylsym import checks
from weylsym.algebra import P, Q, monomial, normalize, scalar
from weylsym.calculus import poisson_sym
from weylsym.cli import main
from weylsym.formatting import format_text
from weylsym.oracle import momentum, position, represent
from weylsym.parser import parse_operator
from weylsym.quantization import ClassicalPoly, c_multiply, c_poisson, dequantize, quantize
from weylsym.symmetrization import (
    pq_normal_expand,
    sym_product,
    symmetrize,
    weyl_closed_form,
    weyl_order,
)

pytestmark = pytest.mark.acceptance


def report(n, ok, detail, seconds=None, budget=None):
    timing = "" if seconds is None else f" [{seconds:.2f}s" + (f" / {budget}s]" if budget else "]")
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}{timing}"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)
    assert ok, line


def timed(fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def sweep_report(n, result, seconds, budget=None):
    ok = result.passed and (budget is None or seconds < budget)
    report(n, ok, result.summary(), seconds, budget)


# --- 1: symmetrizer, Weyl ordering and closed form agree ---------------------------------


def test_criterion_01_symmetrizer_equals_weyl_order():
    def sweep():
        bad = []
        for n in range(9):
            for m in range(9):
                s = symmetrize(monomial(n, m))
                if not (s == weyl_order(n, m) == weyl_closed_form(n, m)):
                    bad.append((n, m))
        return bad

    bad, secs = timed(sweep)
    report(1, not bad and secs < 60, f"81 (n,m) pairs, {len(bad)} mismatches", secs, 60)


# --- 2: square example --------------------------------------------------------------


def test_criterion_02_golden_square():
    golden = monomial(2, 2) + 2 * monomial(1, 1, 1) + scalar(Fraction(1, 2), 2)
    got = sym_product(monomial(2, 0), monomial(0, 2))
    oracle = symmetrize_oracle("qqpp")
    ok = got == golden and poly_dict(golden) == oracle
    report(2, ok, f"q^2 @ p^2 = {format_text(got)}")


# --- 3: normal ordering closed form ----------------------------------------------------


def test_criterion_03_normal_order_closed_form():
    def sweep():
        return [
            (m, n)
            for m in range(11)
            for n in range(11)
            if pq_normal_expand(m, n) != normalize((P,) * m + (Q,) * n)
        ]

    bad, secs = timed(sweep)
    report(3, not bad and secs < 5, f"121 (m,n) pairs, {len(bad)} mismatches", secs, 5)


# --- 4: combinatorial identities -------------------------------------------------------


def test_criterion_04_binomial_identities():
    def sweep():
        return checks.check_lemma52(12, 12), checks.check_identities(12, 12)

    (lemma, ids), secs = timed(sweep)
    ok = lemma.passed and ids.passed and secs < 5
    report(4, ok, f"{lemma.summary()}; {ids.summary()}", secs, 5)


# --- 5: commutativity and composition of the symmetrized product ---------------------------


def test_criterion_05_product_commutes_and_composes():
    result, secs = timed(checks.check_prop1, 4, 4)
    sweep_report(5, result, secs)


# --- 6: derivative rules ---------------------------------------------------------------


def test_criterion_06_derivative_rules():
    result, secs = timed(checks.check_prop2, 8, 6)
    samples = sum(1 for r in result.rows if r.label.startswith("(a)"))
    report(6, result.passed and samples == 20, f"{result.summary()}, {samples} random vectors", secs)


# --- 7: Lie algebra laws of the symmetrized bracket --------------------------------------


def test_criterion_07_bracket_lie_laws():
    result, secs = timed(checks.check_prop3)
    sweep_report(7, result, secs)


# --- 8: bracket equals scaled commutator --------------------------------------------------


def test_criterion_08_bracket_equals_scaled_commutator():
    result, secs = timed(checks.check_theorem4, 4, 4)
    failing = sorted({r.params["rho"] for r in result.failures})
    detail = result.summary()
    if failing:
        detail += f"; failing states: {', '.join(failing)}"
    report(8, result.passed and secs < 30, detail, secs, 30)


# --- 9: quantization is a homomorphism ------------------------------------------------------


def _classical_monomials(max_degree):
    return [(a, d - a) for d in range(max_degree + 1) for a in range(d + 1)]


def test_criterion_09_quantization():
    def sweep():
        bad, pairs = [], 0
        monos = _classical_monomials(8)
        for a, b in monos:
            f = ClassicalPoly({(a, b, 0): 1})
            for c, d in monos:
                if a + b + c + d > 8:
                    continue
                g = ClassicalPoly({(c, d, 0): 1})
                pairs += 1
                qf, qg = quantize(f), quantize(g)
                if quantize(c_multiply(f, g)) != sym_product(qf, qg):
                    bad.append(("product", (a, b), (c, d)))
                if quantize(c_poisson(f, g)) != poisson_sym(qf, qg):
                    bad.append(("bracket", (a, b), (c, d)))
        trips = 0
        for a, b in _classical_monomials(10):
            f = ClassicalPoly({(a, b, 0): Fraction(a + 2, b + 1)})
            trips += 1
            if dequantize(quantize(f)) != f:
                bad.append(("round trip", (a, b)))
        return bad, pairs, trips

    (bad, pairs, trips), secs = timed(sweep)
    report(9, not bad, f"{pairs} monomial pairs, {trips} round trips, {len(bad)} failures", secs)


# --- 10: numeric matrix oracle ---------------------------------------------------------


DIM, HBAR = 64, 1.0


def _word_matrix(word):
    mats = {"q": position(DIM, HBAR), "p": momentum(DIM, HBAR)}
    out = np.eye(DIM, dtype=complex)
    for ch in word:
        out = out @ mats[ch]
    return out


def _weyl_matrix(n, m):
    # 2^-n sum_k C(n,k) Q^(n-k) P^m Q^k, built from float matrix products only
    return sum(comb(n, k) * _word_matrix("q" * (n - k) + "p" * m + "q" * k) for k in range(n + 1)) / 2 ** n


def _average_matrix(n, m):
    words = set(permutations("q" * n + "p" * m))
    return sum(_word_matrix(w) for w in words) / len(words)


def _commutator_matrix(w1, w2):
    a, b = _word_matrix(w1), _word_matrix(w2)
    return a @ b - b @ a


def _oracle_identities():
    """(label, exact engine value, independently built float matrix, degree)."""
    cases = []
    for m, n in [(1, 1), (2, 2), (3, 2), (2, 4), (3, 3)]:
        cases.append((f"p^{m} q^{n} normal form", pq_normal_expand(m, n), _word_matrix("p" * m + "q" * n), m + n))
    for n, m in [(1, 1), (2, 2), (3, 1), (2, 3), (4, 2), (3, 3)]:
        cases.append((f"S(q^{n} p^{m}) as average", symmetrize(monomial(n, m)), _average_matrix(n, m), n + m))
    for n, m in [(2, 2), (4, 1), (3, 2), (2, 4)]:
        cases.append((f"Weyl order {n},{m}", weyl_closed_form(n, m), _weyl_matrix(n, m), n + m))
    for w1, w2 in [("q", "p"), ("qq", "pp"), ("qqq", "p"), ("qp", "ppq")]:
        exact = normalize(to_word(w1 + w2)) - normalize(to_word(w2 + w1))
        cases.append((f"[{w1},{w2}]", exact, _commutator_matrix(w1, w2), len(w1) + len(w2)))
    cases.append(("word pqpqpq", normalize(to_word("pqpqpq")), _word_matrix("pqpqpq"), 6))
    return cases


def test_criterion_10_numeric_oracle():
    def sweep():
        worst, results = 0.0, []
        for label, exact, numeric, d in _oracle_identities():
            assert d <= 6
            safe = DIM - d
            diff = float(np.max(np.abs(represent(exact, DIM, HBAR).matrix[:safe, :safe] - numeric[:safe, :safe])))
            results.append((label, diff))
            worst = max(worst, diff)
        return results, worst

    (results, worst), secs = timed(sweep)
    bad = [label for label, diff in results if not diff < 1e-9]
    ok = len(results) == 20 and not bad and secs < 10
    report(10, ok, f"{len(results)} identities at dim {DIM}, max |diff| = {worst:.2e}", secs, 10)


# --- 11: representation independence -------------------------------------------------------


def test_criterion_11_representation_independence():
    rng = random.Random(2024)
    bad = []
    for _ in range(200):
        body = "".join(rng.choice("qp") for _ in range(rng.randint(0, 9)))
        if rng.random() < 0.3:
            pos = rng.randint(0, len(body))
            body = body[:pos] + rng.choice("xy") + body[pos:]
        word = to_word(body)
        lhs = symmetrize(word)
        if lhs != symmetrize(normalize(word)) or poly_dict(lhs) != symmetrize_oracle(body):
            bad.append(body)
    report(11, not bad, f"200 random raw words, {len(bad)} mismatches")


# --- 12: command line ------------------------------------------------------------------------


def test_criterion_12_cli(capsys):
    corpus = [
        s.strip()
        for s in (Path(__file__).parent / "data" / "corpus.txt").read_text().splitlines()
        if s.strip() and not s.startswith("#")
    ]
    unstable = []
    for s in corpus:
        text = format_text(parse_operator(s))
        if format_text(parse_operator(text)) != text:
            unstable.append(s)
    code = main(["check", "theorem5", "--max-n", "6", "--max-m", "6"])
    out = capsys.readouterr().out.strip()
    ok = len(corpus) == 50 and not unstable and code == 0
    report(12, ok, f"{len(corpus)} corpus expressions, {len(unstable)} unstable; check theorem5 -> exit {code} ({out})")
