import random
from fractions import Fraction

import pytest

from semiinv import evalmod, generators as gen
from semiinv.evalmod import (
    DEFAULT_PRIMES,
    Leaf,
    PolyAt,
    check_prime,
    evaluate_mod,
    poly_eval_mod,
    sample_point,
)
from semiinv.matrix import block_matrix
from semiinv.poly import GF, QQ, ZZ, Polynomial, PolyError, VariableSet

import oracles

VS = VariableSet(("x", "y", "z"))


def test_example_x_squared_plus_one():
    x = Polynomial.variable(ZZ, VS, "x")
    assert poly_eval_mod(x ** 2 + 1, {"x": 2, "y": 0, "z": 0}, 5) == 0


def test_zero_polynomial():
    assert poly_eval_mod(Polynomial.zero(ZZ, VS), {"x": 1, "y": 2, "z": 3}, 7) == 0


def test_missing_binding():
    x = Polynomial.variable(ZZ, VS, "x")
    with pytest.raises(PolyError):
        poly_eval_mod(x, {"y": 1}, 7)


def test_prime_validation():
    check_prime(5)
    check_prime(7)
    check_prime(2147483647)
    with pytest.raises(PolyError):
        check_prime(9)
    with pytest.raises(PolyError):
        check_prime(2)
    with pytest.raises(PolyError):
        check_prime(3)
    check_prime(3, allow_small_char=True)
    with pytest.raises(PolyError):
        check_prime(2**31 + 11)
    with pytest.raises(PolyError):
        evaluate_mod(Polynomial.zero(ZZ, VS), {}, 9)


def test_default_primes_are_the_five_largest_below_2_31():
    assert DEFAULT_PRIMES == (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)
    for p in DEFAULT_PRIMES:
        check_prime(p)


def test_exact_vs_modular_500_cases():
    rng = random.Random(4100)
    prime = 2147483629
    for _ in range(500):
        terms = {}
        for _ in range(rng.randint(0, 5)):
            mono = tuple(rng.randint(0, 4) for _ in range(3))
            terms[mono] = terms.get(mono, 0) + rng.randint(-1000, 1000)
        p = Polynomial.from_terms(ZZ, VS, terms)
        point = {n: rng.randint(0, prime - 1) for n in VS.names}
        assert poly_eval_mod(p, point, prime) == p.evaluate(point) % prime
        assert poly_eval_mod(p, point, prime) == oracles.naive_eval_mod(p, point, prime)


def test_rational_coefficients_mod_p():
    x = Polynomial.variable(QQ, VS, "x")
    p = x * Fraction(1, 2)
    # 1/2 mod 7 is 4
    assert poly_eval_mod(p, {"x": 1, "y": 0, "z": 0}, 7) == 4
    bad = x * Fraction(1, 7)
    with pytest.raises(PolyError):
        poly_eval_mod(bad, {"x": 1, "y": 0, "z": 0}, 7)


def test_sample_point_determinism_and_range():
    names = tuple(f"v{i}" for i in range(40))
    a = sample_point(names, seed=0, prime=101, trial=3)
    b = sample_point(names, seed=0, prime=101, trial=3)
    assert a == b
    c = sample_point(names, seed=0, prime=101, trial=4)
    d = sample_point(names, seed=1, prime=101, trial=3)
    assert a != c and a != d
    assert all(0 <= v < 101 for v in a.values())


def test_dag_memoizes_shared_leaves():
    x = Polynomial.variable(ZZ, VS, "x")
    leaf = Leaf(x ** 2 + 1)
    outer_vars = VariableSet(("u", "v"))
    u = Polynomial.variable(ZZ, outer_vars, "u")
    v = Polynomial.variable(ZZ, outer_vars, "v")
    expr = PolyAt(u * v - u - v, {"u": leaf, "v": leaf})
    # u*v - u - v at u = v = s evaluates to s^2 - 2s
    point = {"x": 3, "y": 0, "z": 0}
    s = 10
    assert expr.eval_mod(point, 97) == (s * s - 2 * s) % 97
    assert expr.degree_bound() == 4


def test_dag_expand_matches_eval():
    x = Polynomial.variable(ZZ, VS, "x")
    y = Polynomial.variable(ZZ, VS, "y")
    outer_vars = VariableSet(("u", "v"))
    u = Polynomial.variable(ZZ, outer_vars, "u")
    v = Polynomial.variable(ZZ, outer_vars, "v")
    expr = PolyAt(u ** 2 - v, {"u": Leaf(x + y), "v": Leaf(x ** 2 + 2 * x * y + y ** 2)})
    assert expr.expand().is_zero()


def test_unbound_abstract_variable_rejected():
    outer_vars = VariableSet(("u", "v"))
    u = Polynomial.variable(ZZ, outer_vars, "u")
    x = Polynomial.variable(ZZ, VS, "x")
    with pytest.raises(PolyError):
        PolyAt(u, {})
    PolyAt(u, {"u": Leaf(x)})  # v unused, binding not required


def test_block_determinant_extract_vs_evaluate_10_points():
    """Extract-then-evaluate equals evaluate-then-extract for the 9x9 block
    determinant, cross-checked against the exact integer path."""
    prime = 2147483629
    table = gen.generator_table()
    q27 = table.q
    tvars = VariableSet(gen.T_NAMES)
    ring = GF(prime)
    for trial in range(10):
        point = sample_point(gen.TRIPLE_NAMES, seed=99, prime=prime, trial=trial)
        # path 1: evaluate the stored 27-variable polynomial
        v1 = poly_eval_mod(q27, point, prime)
        # path 2: numeric blocks, symbolic t's, then coefficient extraction
        def fmat(r):
            from semiinv.matrix import PolyMatrix

            return PolyMatrix.from_scalars(
                ring,
                tvars,
                [[point[f"x{r}_{i}{j}"] for j in (1, 2, 3)] for i in (1, 2, 3)],
            )

        def tscale(m, name):
            return m.scale(Polynomial.variable(ring, tvars, name))

        a1, a2, a3 = fmat(1), fmat(2), fmat(3)
        big = block_matrix(
            [
                [None, tscale(a1, "t1"), tscale(a2, "t2")],
                [tscale(a1, "t4"), None, tscale(a3, "t3")],
                [tscale(a2, "t5"), tscale(a3, "t6"), None],
            ]
        )
        det = big.determinant()
        coeff = det.coefficient(
            {"t1": 2, "t2": 1, "t3": 2, "t4": 1, "t5": 2, "t6": 1}
        )
        assert v1 == coeff
        # path 3: exact integer evaluation reduced mod p
        assert v1 == q27.evaluate(point) % prime
