import random
from fractions import Fraction

import pytest

from semiinv import generators as gen, relations
from semiinv.linalg import rank
from semiinv.poly import QQ, ZZ, Polynomial, VariableSet
from semiinv.textio import parse_text

import oracles

I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
Z3 = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]


@pytest.fixture(scope="module")
def table():
    return gen.generator_table()


def as_const(p):
    assert p.total_degree() == 0
    return p.coefficient({})


# -- the ten pencil coefficients ------------------------------------------------


def test_f_on_identity_zero_zero():
    T = gen.scalar_triple(I3, Z3, Z3)
    fs = gen.f_all(T)
    assert as_const(fs[(3, 0, 0)]) == 1
    for ijk in gen.F_INDEX:
        if ijk != (3, 0, 0):
            assert fs[ijk].is_zero()


def test_f_on_identity_triple_multinomials():
    import math

    T = gen.scalar_triple(I3, I3, I3)
    fs = gen.f_all(T)
    for (i, j, k), p in fs.items():
        expected = math.factorial(3) // (
            math.factorial(i) * math.factorial(j) * math.factorial(k)
        )
        assert as_const(p) == expected


def test_f300_is_det_a1(table):
    T = gen.generic_triple()
    det = T.a1.determinant()
    assert table.f_by_ijk[(3, 0, 0)] == det
    assert len(det) == 6


def test_f_via_rowexpansion_oracle(table):
    """The pencil coefficients re-derived with an independent determinant."""
    T = gen.generic_triple()
    w = T.vars.extend(gen.T_NAMES)

    def tv(name):
        return Polynomial.variable(ZZ, w, name)

    pencil = None
    for name, m in zip(("t1", "t2", "t3"), T.components()):
        part = m.map_entries(lambda e: e.convert(w)).scale(tv(name))
        pencil = part if pencil is None else pencil + part
    det = oracles.rowexp_determinant_package(pencil)
    for (i, j, k), p in table.f_by_ijk.items():
        coeff = det.coefficient_of({"t1": i, "t2": j, "t3": k}, gen.T_NAMES)
        assert coeff.convert(gen.TRIPLE_VARS) == p


# -- h and q ---------------------------------------------------------------------


def test_h_on_identity_triple_is_minus_three():
    # commuting blocks give det = (t2*t3 - t1^2)^3; its t1^2 t2^2 t3^2
    # coefficient is -3
    T = gen.scalar_triple(I3, I3, I3)
    assert as_const(gen.h_poly(T)) == -3


def test_h_identity_triple_rowexpansion_oracle():
    tv = VariableSet(("t1", "t2", "t3"))

    def tpoly(name):
        return Polynomial.variable(ZZ, tv, name)

    from semiinv.matrix import PolyMatrix, block_matrix

    ident = PolyMatrix.identity(ZZ, tv, 3)
    big = block_matrix(
        [
            [ident.scale(tpoly("t2")), ident.scale(tpoly("t1"))],
            [ident.scale(tpoly("t1")), ident.scale(tpoly("t3"))],
        ]
    )
    det = oracles.rowexp_determinant_package(big)
    assert det.coefficient({"t1": 2, "t2": 2, "t3": 2}) == -3


def test_q_on_identity_triple_is_three():
    # commuting blocks give det = (t1*t3*t5 + t2*t4*t6)^3
    T = gen.scalar_triple(I3, I3, I3)
    assert as_const(gen.q_poly(T)) == 3


def test_h_q_multidegrees(table):
    assert table.h.multidegree(gen.BLOCK_NAMES) == (2, 2, 2)
    assert table.q.multidegree(gen.BLOCK_NAMES) == (3, 3, 3)
    assert table.H.multidegree(gen.BLOCK_NAMES) == (2, 2, 2)
    assert table.Q.multidegree(gen.BLOCK_NAMES) == (3, 3, 3)
    for n, ijk in enumerate(gen.F_INDEX):
        assert table.f[n].multidegree(gen.BLOCK_NAMES) == ijk


def test_f_span_rank_ten(table):
    keys = sorted({k for p in table.f for k in p.terms})
    index = {k: i for i, k in enumerate(keys)}
    vectors = []
    for p in table.f:
        vec = [0] * len(keys)
        for k, c in p.terms.items():
            vec[index[k]] = c
        vectors.append(vec)
    assert rank(vectors) == 10


# -- special triples --------------------------------------------------------------


def test_skew_triple_kills_all_f():
    fs = gen.f_all(gen.skew_triple())
    assert all(p.is_zero() for p in fs.values())


def test_skew_triple_h_q_are_det_powers():
    skew = gen.skew_triple()
    d = gen.skew_parameter_matrix().determinant()
    assert gen.h_poly(skew) == d.mul(d)
    assert gen.q_poly(skew) == d.mul(d).mul(d)


def test_skew_identity_parameters():
    skew = gen.skew_triple()
    point = {"x1": 1, "y1": 0, "z1": 0, "x2": 0, "y2": 1, "z2": 0, "x3": 0, "y3": 0, "z3": 1}
    assert gen.h_poly(skew).evaluate(point) == 1
    assert gen.q_poly(skew).evaluate(point) == 1
    assert gen.H_poly(skew).evaluate(point) == 1
    assert gen.Q_poly(skew).evaluate(point) == 1


def test_weierstrass_pencil():
    w = gen.weierstrass_triple()
    det = gen.pencil_determinant(w)
    expected = parse_text("t3^3 + t2^2*t1 - b^2*t1^2*t3 - a^2*t1^3", det.vars, ZZ)
    assert det == expected


def test_weierstrass_H_Q_values():
    w = gen.weierstrass_triple()
    a = Polynomial.variable(QQ, gen.WEIERSTRASS_VARS, "a")
    b = Polynomial.variable(QQ, gen.WEIERSTRASS_VARS, "b")
    assert gen.H_poly(w) == -b
    assert gen.Q_poly(w) == -a


def test_H_on_identity_triple_is_zero():
    # h = -3 and the multinomial f-values give -3 -3 -3 + 6 + 3 = 0
    T = gen.scalar_triple(I3, I3, I3)
    assert gen.H_poly(T).is_zero()


# -- the group action --------------------------------------------------------------


def test_act_identity_and_diag():
    T = gen.generic_triple()
    acted = gen.act_on_triple(I3, T)
    assert acted.a1 == T.a1 and acted.a2 == T.a2 and acted.a3 == T.a3
    g = [[2, 0, 0], [0, 3, 0], [0, 0, 5]]
    acted = gen.act_on_triple(g, T)
    assert acted.a1 == T.a1.scale(2)
    assert acted.a2 == T.a2.scale(3)
    assert acted.a3 == T.a3.scale(5)


def test_right_action_composition_random():
    rng = random.Random(11)
    T = gen.generic_triple()
    for _ in range(5):
        g1 = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)] for _ in range(3)]
        g2 = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)] for _ in range(3)]
        lhs = gen.act_on_triple(g2, gen.act_on_triple(g1, T))
        prod = [
            [sum(g1[i][k] * g2[k][j] for k in range(3)) for j in range(3)]
            for i in range(3)
        ]
        rhs = gen.act_on_triple(prod, T)
        assert lhs.components() == rhs.components()


def test_act_on_function_identity(table):
    F = table.f_by_ijk[(1, 1, 1)]
    assert gen.act_on_function(I3, F) == F


def test_action_on_f_span_membership(table):
    """Transvection images of every f decompose exactly in the f-basis, and
    the decomposition matches the matrix induced on the pencil variables."""
    for g in (gen.U12, gen.U23):
        mat = gen.f_action_matrix(g)
        for n in range(10):
            acted = gen.act_on_function(g, table.f[n])
            coords = gen.decompose_in_f_span(acted)
            assert coords == mat[n]


def test_u12_moves_f030_but_fixes_f300(table):
    f300 = table.f_by_ijk[(3, 0, 0)]
    f030 = table.f_by_ijk[(0, 3, 0)]
    assert gen.act_on_function(gen.U12, f300) == f300
    acted = gen.act_on_function(gen.U12, f030)
    assert acted != f030
    expected = (
        table.f_by_ijk[(3, 0, 0)]
        + table.f_by_ijk[(2, 1, 0)]
        + table.f_by_ijk[(1, 2, 0)]
        + table.f_by_ijk[(0, 3, 0)]
    )
    assert acted == expected


def test_unipotent_composition(table):
    u12u23 = [
        [sum(gen.U12[i][k] * gen.U23[k][j] for k in range(3)) for j in range(3)]
        for i in range(3)
    ]
    for p in table.f:
        via_product = gen.act_on_function(u12u23, p)
        stepwise = gen.act_on_function(gen.U12, gen.act_on_function(gen.U23, p))
        assert via_product == stepwise


def test_transvections_have_determinant_one():
    for g in gen.ELEMENTARY_TRANSVECTIONS.values():
        assert gen.group_element_determinant(g) == 1


# -- classical cubic invariants ------------------------------------------------------


@pytest.fixture(scope="module")
def cubic_invariants():
    return gen.cubic_invariants_from_f_forms(*relations.derive_st())


def test_cubic_invariants_degrees(cubic_invariants):
    s_cubic, t_cubic = cubic_invariants
    assert s_cubic.total_degree() == 4
    assert {sum(e) for e, _ in s_cubic.sorted_terms()} == {4}
    assert t_cubic.total_degree() == 6
    assert {sum(e) for e, _ in t_cubic.sorted_terms()} == {6}


def test_cubic_invariants_on_weierstrass_pencil(cubic_invariants):
    """The pencil cubic t3^3 + t2^2 t1 - b^2 t1^2 t3 - a^2 t1^3 has
    coefficients a=-a^2, a3=-b^2/3, b1=1/3, c=1 in the dictionary; the
    invariants then take the pinned values -b^2/27 and -4a^2/27."""
    s_cubic, t_cubic = cubic_invariants
    wv = gen.WEIERSTRASS_VARS
    a = Polynomial.variable(QQ, wv, "a")
    b = Polynomial.variable(QQ, wv, "b")
    zero = Polynomial.zero(QQ, wv)
    point = {
        "a": -a.mul(a),
        "a2": zero,
        "a3": b.mul(b) * Fraction(-1, 3),
        "b": zero,
        "b1": Polynomial.constant(QQ, wv, Fraction(1, 3)),
        "b3": zero,
        "c": Polynomial.constant(QQ, wv, 1),
        "c1": zero,
        "c2": zero,
        "m": zero,
    }
    assert s_cubic.substitute(point) == b.mul(b) * Fraction(-1, 27)
    assert t_cubic.substitute(point) == a.mul(a) * Fraction(-4, 27)


def test_cubic_invariants_fixed_by_unipotent_actions(cubic_invariants):
    s_cubic, t_cubic = cubic_invariants
    for g in (gen.U12, gen.U23):
        subst = gen.cubic_action_substitution(g)
        assert s_cubic.substitute(subst) == s_cubic
        assert t_cubic.substitute(subst) == t_cubic


def test_cubic_table_roundtrip(cubic_invariants):
    """Substituting the dictionary forward again recovers the f-forms."""
    s_cubic, t_cubic = cubic_invariants
    s4, t6 = relations.derive_st()
    forward = {
        cname: Polynomial.variable(QQ, gen.F_VARS, fname) * Fraction(1, scale)
        for fname, (cname, scale) in gen._CUBIC_OF_F.items()
    }
    assert s_cubic.substitute(forward) == s4
    assert t_cubic.substitute(forward) == t6
