import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from semiinv.poly import (
    GF,
    QQ,
    ZZ,
    Polynomial,
    PolyError,
    RingMismatch,
    VariableMismatch,
    VariableSet,
)

import oracles

VS = VariableSet(("x", "y", "z"))


def var(name, ring=ZZ):
    return Polynomial.variable(ring, VS, name)


def test_add_cancellation():
    x, y = var("x"), var("y")
    assert (x + y) + (x - y) == 2 * x
    assert ((x ** 2) + (-(x ** 2))).is_zero()


def test_additive_identity():
    p = var("x") * 3 + var("y") ** 2
    assert p + Polynomial.zero(ZZ, VS) == p


def test_mul_difference_of_squares():
    x, y = var("x"), var("y")
    assert (x + y) * (x - y) == x ** 2 - y ** 2


def test_mul_unit():
    p = var("x") * 5 - var("z")
    assert p * Polynomial.constant(ZZ, VS, 1) == p


def test_multinomial_coefficient():
    x, y, z = var("x"), var("y"), var("z")
    p = (x + y + z) ** 3
    assert p.coefficient({"x": 1, "y": 1, "z": 1}) == 6


def test_coefficient_of_t_monomial():
    tv = VariableSet(("t1", "t2"))
    t1 = Polynomial.variable(ZZ, tv, "t1")
    t2 = Polynomial.variable(ZZ, tv, "t2")
    p = (t1 + t2) ** 2
    c = p.coefficient_of({"t1": 1, "t2": 1}, ("t1", "t2"))
    assert c == Polynomial.constant(ZZ, tv, 2)


def test_coefficient_of_partial():
    tv = VariableSet(("t1", "x", "y"))
    t1 = Polynomial.variable(ZZ, tv, "t1")
    x = Polynomial.variable(ZZ, tv, "x")
    y = Polynomial.variable(ZZ, tv, "y")
    p = t1 ** 2 * x + t1 * y
    assert p.coefficient_of({"t1": 2}, ("t1",)) == x
    # the zero exponent vector returns the part free of the subset
    assert p.coefficient_of({}, ("t1",)).is_zero()


def test_coefficient_of_rejects_outside_subset():
    p = var("x") + var("y")
    with pytest.raises(VariableMismatch):
        p.coefficient_of({"y": 1}, ("x",))


def test_substitute_square():
    av = VariableSet(("a", "b"))
    a = Polynomial.variable(ZZ, av, "a")
    b = Polynomial.variable(ZZ, av, "b")
    p = var("x") ** 2
    out = p.substitute({"x": a + b, "y": 0, "z": 0})
    assert out == a ** 2 + 2 * a * b + b ** 2


def test_substitute_identity_bindings():
    p = var("x") + var("y")
    out = p.substitute({"x": var("x"), "y": var("y")})
    assert out == p


def test_substitute_scalar():
    p = var("x")
    assert p.substitute({"x": 1}) == Polynomial.constant(ZZ, VS, 1)


def test_ring_mismatch_raises():
    p = var("x")
    q = Polynomial.variable(QQ, VS, "x")
    with pytest.raises(RingMismatch):
        p + q
    with pytest.raises(RingMismatch):
        p.mul(q)


def test_varset_mismatch_raises():
    p = var("x")
    q = Polynomial.variable(ZZ, VariableSet(("x", "w")), "x")
    with pytest.raises(VariableMismatch):
        p + q


def test_rational_normalization():
    p = Polynomial.constant(QQ, VS, Fraction(4, 6))
    assert p.coefficient({}) == Fraction(2, 3)
    assert Fraction(2, 3).denominator > 0


def test_integral_fraction_into_zz():
    assert Polynomial.constant(ZZ, VS, Fraction(6, 3)).coefficient({}) == 2
    with pytest.raises(RingMismatch):
        Polynomial.constant(ZZ, VS, Fraction(1, 2))


def test_gf_reduction_and_range():
    F5 = GF(5)
    p = Polynomial.constant(F5, VS, -3)
    assert p.coefficient({}) == 2
    x = Polynomial.variable(F5, VS, "x")
    assert ((x * 3) + (x * 2)).is_zero()
    assert Polynomial.constant(F5, VS, Fraction(1, 2)).coefficient({}) == 3


def test_gf_rejects_bad_modulus():
    with pytest.raises(PolyError):
        GF(4)
    with pytest.raises(PolyError):
        GF(2)
    with pytest.raises(PolyError):
        GF(2**31 + 11)


def test_exponent_bound_guard():
    x = var("x")
    p = x ** 200
    with pytest.raises(PolyError):
        p.mul(p)


def test_graded_lex_order():
    x, y = var("x"), var("y")
    p = x * y + x ** 2 + y + Polynomial.constant(ZZ, VS, 7) + y ** 3
    degrees = [sum(e) for e, _ in p.sorted_terms()]
    assert degrees == sorted(degrees, reverse=True)
    assert p.text() == "y^3 + x^2 + x*y + y + 7"


def test_multidegree_and_degree_in():
    x, y, z = var("x"), var("y"), var("z")
    p = x ** 2 * y * z + x * x * y * z
    assert p.multidegree((("x",), ("y",), ("z",))) == (2, 1, 1)
    assert p.degree_in(("x", "y")) == 3
    q = x + y ** 2
    assert q.multidegree((("x",), ("y",), ("z",))) is None


def test_convert_roundtrip_and_missing_variable():
    big = VariableSet(("x", "y", "z", "w"))
    p = var("x") * var("y")
    lifted = p.convert(big)
    assert lifted.convert(VS) == p
    q = Polynomial.variable(ZZ, big, "w")
    with pytest.raises(VariableMismatch):
        q.convert(VS)


def test_evaluate_exact():
    x, y = var("x"), var("y")
    p = x ** 3 - 2 * x * y + 5
    assert p.evaluate({"x": 2, "y": 3, "z": 0}) == 8 - 12 + 5
    assert p.evaluate({"x": Fraction(1, 2), "y": 1, "z": 9}) == Fraction(1, 8) - 1 + 5


# -- randomized ring axioms ----------------------------------------------------


def _random_poly(rng, ring, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in range(3))
        if ring == QQ:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        else:
            c = rng.randint(-9, 9)
        terms[mono] = terms.get(mono, 0) + c
    return Polynomial.from_terms(ring, VS, terms)


@pytest.mark.parametrize("ring", [ZZ, QQ, GF(10007)], ids=["ZZ", "QQ", "GF"])
def test_ring_axioms_bulk(ring):
    rng = random.Random(20260810)
    for _ in range(1000):
        p = _random_poly(rng, ring)
        q = _random_poly(rng, ring)
        r = _random_poly(rng, ring)
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert p.mul(q) == q.mul(p)
        assert p.mul(q.mul(r)) == (p.mul(q)).mul(r)
        assert p.mul(q + r) == p.mul(q) + p.mul(r)


@st.composite
def packaged_polys(draw):
    n_terms = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n_terms):
        mono = tuple(draw(st.integers(0, 3)) for _ in range(3))
        terms[mono] = draw(st.integers(-20, 20))
    return Polynomial.from_terms(ZZ, VS, terms)


@given(packaged_polys(), packaged_polys())
@settings(max_examples=300)
def test_mul_matches_naive_oracle(p, q):
    got = oracles.from_package(p.mul(q))
    want = oracles.naive_mul(oracles.from_package(p), oracles.from_package(q))
    assert got == want


@given(packaged_polys(), packaged_polys())
@settings(max_examples=300)
def test_add_matches_naive_oracle(p, q):
    got = oracles.from_package(p + q)
    want = oracles.naive_add(oracles.from_package(p), oracles.from_package(q))
    assert got == want
