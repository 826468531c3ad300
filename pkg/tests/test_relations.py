from fractions import Fraction

import pytest

from semiinv import generators as gen, relations as rel
from semiinv.poly import QQ, ZZ, Polynomial
from semiinv.verify import RunConfig

SMALL = RunConfig(trials=8, primes=(2147483647, 2147483629, 5, 7), seed=0)


def test_relation_transcription_lock():
    A = rel.defining_relation()
    assert len(A) == rel.RELATION_TERM_COUNT == 76
    assert rel.relation_digest(A) == rel.RELATION_DIGEST


def test_relation_named_coefficients():
    A = rel.defining_relation()
    assert A.coefficient({"q": 2}) == 1
    assert A.coefficient({"q": 1, "h": 1, "f5": 1}) == -1
    assert A.coefficient({"h": 3}) == -1
    assert A.coefficient({"f1": 2, "f7": 2, "f10": 2}) == 9
    assert A.coefficient({"q": 1, "f1": 1, "f7": 1, "f10": 1}) == 3
    assert A.coefficient({}) == 0


def test_relation_weighted_degree_18():
    A = rel.defining_relation()
    assert rel.weighted_degrees(A, rel.RELATION_WEIGHTS) == {18}


def test_relation_at_skew_identity_point():
    """q = h = 1 and all f = 0 (the skew triple with identity parameters)
    reduces the relation to q^2 - h^3 = 0."""
    A = rel.defining_relation()
    point = {name: 0 for name in rel.ABSTRACT12_NAMES}
    point["q"] = 1
    point["h"] = 1
    assert A.evaluate(point) == 0


def test_relation_at_all_zeros():
    A = rel.defining_relation()
    assert A.evaluate({name: 0 for name in rel.ABSTRACT12_NAMES}) == 0


def test_derivation_structure():
    E = (
        rel.abstract_Q().mul(rel.abstract_Q())
        - rel.abstract_H() ** 3
        - rel.defining_relation().to_ring(QQ)
    )
    assert E.degree_in(("q",)) == 0
    assert E.degree_in(("h",)) <= 1


def test_derived_invariants_structure():
    s4, t6 = rel.derive_st()
    assert s4.total_degree() == 4
    assert t6.total_degree() == 6
    assert gen.f_weight(s4) == (4, 4, 4)
    assert gen.f_weight(t6) == (6, 6, 6)


def test_derived_invariants_on_weierstrass():
    s4, t6 = rel.derive_st()
    w = gen.weierstrass_triple()
    a = Polynomial.variable(QQ, gen.WEIERSTRASS_VARS, "a")
    b = Polynomial.variable(QQ, gen.WEIERSTRASS_VARS, "b")
    assert rel.evaluate_f_form_on_triple(s4, w) == b.mul(b) * Fraction(-1, 27)
    assert rel.evaluate_f_form_on_triple(t6, w) == a.mul(a) * Fraction(-4, 27)


def test_derived_invariants_vanish_on_skew():
    s4, t6 = rel.derive_st()
    skew = gen.skew_triple()
    assert rel.evaluate_f_form_on_triple(s4, skew).is_zero()
    assert rel.evaluate_f_form_on_triple(t6, skew).is_zero()


def test_main_relation_modular():
    result = rel.verify_main_relation(SMALL)
    assert result.passed
    assert result.details["degree_bound"] == 18
    assert result.details["nonzero_evaluations"] == 0


def test_theorem1_modular():
    result = rel.verify_theorem1(RunConfig(trials=8, primes=(2147483647, 5), seed=1))
    assert result.passed
    assert result.details["degree_bound"] == 18


def test_theorem1_weierstrass_arithmetic():
    """At a = b = 1: Q^2 = 1 and H^3 + 27*H*S - 27/4*T = -1 + 1 + 1 = 1."""
    s4, t6 = rel.derive_st()
    w = gen.weierstrass_triple()
    point = {"a": 1, "b": 1}
    Q = gen.Q_poly(w).evaluate(point)
    H = gen.H_poly(w).evaluate(point)
    S = rel.evaluate_f_form_on_triple(s4, w).evaluate(point)
    T = rel.evaluate_f_form_on_triple(t6, w).evaluate(point)
    assert Q * Q == 1
    assert H ** 3 + 27 * H * S - Fraction(27, 4) * T == 1


def test_exact_and_modular_agree_on_theorem1_for_weierstrass_family():
    """The 2-parameter specialization of the degree-18 identity is small
    enough to expand exactly; both verdicts agree."""
    s4, t6 = rel.derive_st()
    w = gen.weierstrass_triple()
    Q = gen.Q_poly(w)
    H = gen.H_poly(w)
    S = rel.evaluate_f_form_on_triple(s4, w)
    T = rel.evaluate_f_form_on_triple(t6, w)
    lhs = Q.mul(Q) - H ** 3 - H.mul(S) * 27 + T * Fraction(27, 4)
    assert lhs.is_zero()


def test_special_triple_suite_passes():
    results = rel.special_triple_checks()
    assert all(r.passed for r in results)
    assert len(results) == 9


def test_negative_control_mutated_relation():
    """A single-coefficient mutation must be caught with a counterexample."""
    A = rel.defining_relation()
    mutated = A + Polynomial.monomial(ZZ, rel.ABSTRACT12, {"h": 3}, 1)
    result = rel.verify_main_relation(SMALL, relation=mutated)
    assert not result.passed
    assert result.counterexample is not None
    point = result.counterexample["point"]
    prime = result.counterexample["prime"]
    expr = rel.main_relation_expr(mutated)
    assert expr.eval_mod(point, prime, {}) == result.counterexample["value"] != 0


def test_exact_mode_small_budget_aborts():
    from semiinv.verify import VerifyUsageError

    with pytest.raises(VerifyUsageError):
        rel.verify_main_relation(
            RunConfig(mode="exact", budget=1000, primes=(5,), trials=1)
        )
