from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rewrite_oracle import poly_dict, rewrite, symmetrize_oracle, to_word
from weylsym.algebra import (
    DP_RHO,
    DQ_RHO,
    RHO,
    P,
    Q,
    h,
    hermitian_adjoint,
    letter,
    monomial,
    normalize,
    p,
    q,
    scalar,
)
from weylsym.errors import EngineError
from weylsym.symmetrization import (
    ArrangementSpec,
    alpha,
    arrangements,
    check_identity,
    identity_parameters,
    pq_normal_expand,
    sym_product,
    symmetrize,
    weyl_closed_form,
    weyl_order,
)

half = Fraction(1, 2)
S_Q2P2 = monomial(2, 2) + 2 * monomial(1, 1, 1) + scalar(half, 2)


def word_str(w):
    return "".join(str(g) if not g.is_atom else "*" for g in w)


# --- arrangements ------------------------------------------------------------------


def test_arrangements_two_letters():
    assert [word_str(w) for w in arrangements(ArrangementSpec(1, 1))] == ["qp", "pq"]


def test_arrangements_match_the_six_words_of_the_square_example():
    words = [word_str(w) for w in arrangements(ArrangementSpec(2, 2))]
    assert words == ["qqpp", "qpqp", "qppq", "pqqp", "pqpq", "ppqq"]


def test_arrangements_with_derivative_atom():
    spec = ArrangementSpec(1, 1, DP_RHO)
    words = arrangements(spec)
    assert len(words) == spec.count == 6
    assert len(set(words)) == 6


@pytest.mark.parametrize("n,m", [(0, 0), (3, 2), (4, 4), (0, 5)])
@pytest.mark.parametrize("atom", [None, DQ_RHO])
def test_arrangement_count_is_multinomial(n, m, atom):
    spec = ArrangementSpec(n, m, atom)
    a = 0 if atom is None else 1
    words = arrangements(spec)
    assert len(words) == len(set(words)) == factorial(n + m + a) // (factorial(n) * factorial(m))
    assert words == sorted(words, key=lambda w: [g.sort_key for g in w])


def test_arrangement_spec_rejects_state_atom():
    with pytest.raises(EngineError):
        ArrangementSpec(1, 1, RHO)


# --- symmetrize -------------------------------------------------------------------


def test_symmetrize_dirac_product():
    assert symmetrize(monomial(1, 1)) == monomial(1, 1) + half * h


def test_symmetrize_square_example_golden():
    assert symmetrize(monomial(2, 2)) == S_Q2P2
    assert poly_dict(S_Q2P2) == symmetrize_oracle("qqpp")


def test_symmetrize_kills_h():
    assert symmetrize(h * q) == scalar(0)


@pytest.mark.parametrize("n", range(6))
def test_symmetrize_pure_power(n):
    assert symmetrize(q ** n) == q ** n


def test_symmetrize_leaves_state_products_alone():
    x = q * p * letter(RHO)
    assert symmetrize(x) == x
    assert symmetrize(letter(RHO) * p) == letter(RHO) * p


def test_symmetrize_derivative_atom_matches_oracle():
    got = symmetrize(q * p * letter(DP_RHO))
    assert poly_dict(got) == symmetrize_oracle("qpy")


def test_symmetrize_errors():
    with pytest.raises(EngineError, match="multi-atom"):
        symmetrize(letter(RHO) * q * letter(DQ_RHO))
    with pytest.raises(EngineError):
        symmetrize(q * letter(RHO) * p)
    with pytest.raises(EngineError):
        symmetrize(q.scale_h(-1))


@st.composite
def raw_words(draw):
    body = draw(st.text(alphabet="qp", max_size=7))
    if draw(st.booleans()):
        pos = draw(st.integers(0, len(body)))
        body = body[:pos] + draw(st.sampled_from("xy")) + body[pos:]
    return body


@settings(max_examples=200, deadline=None)
@given(raw_words())
def test_representation_independence(w):
    word = to_word(w)
    assert symmetrize(word) == symmetrize(normalize(word))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(-3, 3)), max_size=4))
def test_symmetrize_idempotent_on_atom_free(spec):
    x = sum((c * monomial(n, m) for n, m, c in spec), scalar(0))
    x = x + h * x  # add some h content
    once = symmetrize(x)
    assert symmetrize(once) == once


# --- symmetrized product --------------------------------------------------------------


def test_sym_product_examples():
    assert sym_product(q, p) == monomial(1, 1) + half * h
    assert sym_product(q ** 2, p ** 2) == S_Q2P2
    qp = sym_product(q, p)
    assert sym_product(qp, qp) == sym_product(q ** 2, p ** 2)


def test_sym_product_with_h_factor_vanishes():
    assert sym_product(h * q, p) == scalar(0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_sym_product_commutative_and_composes(a, b, c, d):
    x, y = sym_product(q ** a, p ** b), sym_product(q ** c, p ** d)
    assert sym_product(x, y) == sym_product(y, x)
    assert sym_product(x, y) == sym_product(q ** (a + c), p ** (b + d))


# --- weyl ordering ------------------------------------------------------------------------


def test_weyl_order_examples():
    assert weyl_order(1, 1) == monomial(1, 1) + half * h
    assert weyl_order(2, 2) == S_Q2P2
    assert weyl_order(0, 4) == p ** 4


def test_weyl_order_22_matches_oracle():
    total = {}
    for w, c in (("qqpp", Fraction(1, 4)), ("qppq", half), ("ppqq", Fraction(1, 4))):
        for key, v in rewrite({(0, w): c}).items():
            total[key] = total.get(key, 0) + v
    assert poly_dict(weyl_order(2, 2)) == total


def test_weyl_closed_form_examples():
    assert weyl_closed_form(2, 2) == S_Q2P2
    assert weyl_closed_form(5, 0) == q ** 5
    assert weyl_closed_form(1, 1) == monomial(1, 1) + half * h


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("m", range(6))
def test_symmetrizer_matches_weyl_order_small(n, m):
    s = symmetrize(monomial(n, m))
    assert s == weyl_order(n, m) == weyl_closed_form(n, m)


@pytest.mark.parametrize("n", range(9))
@pytest.mark.parametrize("m", range(9))
def test_weyl_monomials_are_hermitian_and_alpha_consistent(n, m):
    s = symmetrize(monomial(n, m))
    assert hermitian_adjoint(s) == s
    for j in range(min(n, m) + 1):
        assert s.coefficient((Q,) * (n - j) + (P,) * (m - j), j) == alpha(n, m, j)


def test_alpha_values():
    assert alpha(7, 3, 0) == 1
    assert alpha(2, 2, 1) == 2
    assert alpha(2, 2, 2) == half
    assert alpha(2, 1, 2) == 0


# --- normal ordering closed form --------------------------------------------------------------


def test_pq_normal_expand_examples():
    assert pq_normal_expand(1, 1) == monomial(1, 1) + h
    assert pq_normal_expand(4, 1) == monomial(1, 4) + 4 * monomial(0, 3, 1)
    assert pq_normal_expand(2, 2) == monomial(2, 2) + 4 * monomial(1, 1, 1) + scalar(2, 2)


@pytest.mark.parametrize("m", range(11))
def test_pq_normal_expand_matches_rewriting(m):
    for n in range(11):
        assert pq_normal_expand(m, n) == normalize((P,) * m + (Q,) * n)


# --- identity catalog --------------------------------------------------------------------------


def test_identity_examples():
    r = check_identity("id1", {"n": 4, "k": 2})
    assert r.holds and r.lhs == 10 == comb(5, 2)
    assert check_identity("id2", {"n": 7, "j": 0}).lhs == 2 ** 7
    r = check_identity("L52-i1", {"n": 2, "m": 1})
    assert r.holds and r.lhs == 6


@pytest.mark.parametrize(
    "name", ["id1", "id2", "L52-i1", "L52-i2", "L52-i3", "L52-i4"]
)
def test_identity_catalog_holds(name):
    for params in identity_parameters(name, 9, 9):
        assert check_identity(name, params).holds, params


def test_i4_with_binomial_in_m_fails():
    # C(m+n+1, m) on the right-hand side does not balance; C(m+n+1, n) does.
    n, m, j = 1, 0, 0
    lhs = check_identity("L52-i4", {"n": n, "m": m, "j": j}).lhs
    assert lhs == 1
    assert comb(m + n + 1, m) * alpha(n, m + 1, j + 1) == half


def test_identity_preconditions():
    with pytest.raises(EngineError, match="k <= n"):
        check_identity("id1", {"n": 2, "k": 3})
    with pytest.raises(EngineError, match="i <= n"):
        check_identity("L52-i3", {"n": 2, "m": 1, "i": 3})
    with pytest.raises(EngineError):
        check_identity("L52-i1", {"n": -1, "m": 0})
    with pytest.raises(EngineError):
        check_identity("nope", {})
    with pytest.raises(EngineError, match="needs parameters"):
        check_identity("id2", {"n": 1})
