"""The single defining relation among the twelve generators, and the derived
quartic and sextic f-invariants.

The relation polynomial lives in the abstract 12-variable ring {q, h, f1..f10}
and vanishes identically when the actual generator polynomials are substituted
for the variables.  Subtracting it from Q^2 - H^3 (with Q, H the abstract
highest-weight combinations) leaves an expression linear in h whose two
h-components determine the quartic and sextic invariants exactly; their
normalization is pinned by the values they take on the Weierstrass family.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from functools import lru_cache

from . import generators as gen
from . import textio
from .evalmod import Expr, Leaf, PolyAt
from .poly import QQ, ZZ, Polynomial, PolyError, VariableSet
from .verify import (
    CheckResult,
    RunConfig,
    boolean_check,
    register_expr_builder,
    run_identity,
)

ABSTRACT12_NAMES = ("q", "h") + gen.F_NAMES
ABSTRACT12 = VariableSet(ABSTRACT12_NAMES)

# weighted degree of the relation: q, h, f each count 9, 6, 3
RELATION_WEIGHTS = {"q": 9, "h": 6, **{name: 3 for name in gen.F_NAMES}}

# The quadratic relation among the generators, transcribed once and locked by
# the digest below; every term has weighted degree 18.
_RELATION_TEXT = """
q^2 - q*h*f5
+ 3*q*f1*f7*f10 - q*f1*f8*f9 - q*f2*f4*f10 + q*f2*f6*f8 + q*f3*f4*f9 - q*f3*f6*f7 - q*f4*f5*f6
- h^3 + h^2*f2*f9 + h^2*f3*f8 - 2*h^2*f4*f6
+ 3*h*f1*f4*f8*f10 - h*f1*f4*f9^2 - 6*h*f1*f5*f7*f10 + h*f1*f5*f8*f9 + 3*h*f1*f6*f7*f9 - h*f1*f6*f8^2
- h*f2^2*f8*f10 + 3*h*f2*f3*f7*f10 - h*f2*f3*f8*f9 + h*f2*f4*f5*f10 + h*f2*f4*f6*f9 - h*f2*f6^2*f7
- h*f3^2*f7*f9 - h*f3*f4^2*f10 + h*f3*f4*f6*f8 + h*f3*f5*f6*f7 - h*f4^2*f6^2 + 9*f1^2*f7^2*f10^2
- 6*f1^2*f7*f8*f9*f10 + f1^2*f7*f9^3 + f1^2*f8^3*f10 - 6*f1*f2*f4*f7*f10^2 + f1*f2*f4*f8*f9*f10
+ 3*f1*f2*f5*f7*f9*f10 - f1*f2*f5*f8^2*f10 + 3*f1*f2*f6*f7*f8*f10 - 2*f1*f2*f6*f7*f9^2
+ 3*f1*f3*f4*f7*f9*f10 - 2*f1*f3*f4*f8^2*f10 + 3*f1*f3*f5*f7*f8*f10 - f1*f3*f5*f7*f9^2 - 6*f1*f3*f6*f7^2*f10
+ f1*f3*f6*f7*f8*f9 + f1*f4^3*f10^2 - f1*f4^2*f5*f9*f10 + f1*f4^2*f6*f8*f10 + f1*f4*f5^2*f8*f10
- 3*f1*f4*f5*f6*f7*f10 + f1*f4*f6^2*f7*f9 - f1*f5^3*f7*f10 + f1*f5^2*f6*f7*f9 - f1*f5*f6^2*f7*f8 + f1*f6^3*f7^2
+ f2^3*f7*f10^2 - 2*f2^2*f3*f7*f9*f10 + f2^2*f3*f8^2*f10 - f2^2*f4*f6*f8*f10 - f2^2*f5*f6*f7*f10 + f2^2*f6^2*f7*f9
- 2*f2*f3^2*f7*f8*f10 + f2*f3^2*f7*f9^2 - f2*f3*f4*f5*f8*f10 + 4*f2*f3*f4*f6*f7*f10 + f2*f3*f5^2*f7*f10
- f2*f3*f5*f6*f7*f9 + f2*f4^2*f5*f6*f10 - f2*f4*f6^3*f7 + f3^3*f7^2*f10 + f3^2*f4^2*f8*f10 - f3^2*f4*f5*f7*f10
- f3^2*f4*f6*f7*f9 - f3*f4^3*f6*f10 + f3*f4*f5*f6^2*f7
"""

RELATION_TERM_COUNT = 76
RELATION_DIGEST = "8ebad63629b778748ac7e4ffa6d05fbe2d2fb1b990876fa8ce0d576b32ccc424"


@lru_cache(maxsize=1)
def defining_relation() -> Polynomial:
    """The relation polynomial over ZZ in the ring {q, h, f1..f10}."""
    return textio.parse_text(_RELATION_TEXT, ABSTRACT12, ZZ)


def relation_digest(p: Polynomial) -> str:
    return hashlib.sha256(p.text().encode()).hexdigest()


def weighted_degrees(p: Polynomial, weights: dict) -> set:
    ws = [weights.get(name, 0) for name in p.vars.names]
    return {sum(w * e for w, e in zip(ws, exps)) for exps, _ in p.sorted_terms()}


# -- abstract highest-weight forms --------------------------------------------


def _fvar12(n: int) -> Polynomial:
    return Polynomial.variable(QQ, ABSTRACT12, f"f{n}")


@lru_cache(maxsize=1)
def abstract_H() -> Polynomial:
    h = Polynomial.variable(QQ, ABSTRACT12, "h")
    acc = h
    for c, (i, j) in gen.H_CORRECTIONS:
        acc = acc + _fvar12(i).mul(_fvar12(j)) * c
    return acc


@lru_cache(maxsize=1)
def abstract_Q() -> Polynomial:
    q = Polynomial.variable(QQ, ABSTRACT12, "q")
    h = Polynomial.variable(QQ, ABSTRACT12, "h")
    acc = q
    for c, factors in gen.Q_CORRECTIONS:
        prod = None
        for fct in factors:
            p = h if fct == "h" else _fvar12(fct)
            prod = p if prod is None else prod.mul(p)
        acc = acc + prod * c
    return acc


# -- derivation of the quartic and sextic invariants ---------------------------


@lru_cache(maxsize=1)
def derive_st() -> tuple:
    """The two f-ring invariants (degree 4 and degree 6) obtained by splitting
    Q^2 - H^3 - relation by its h-degree; raises PolyError if the structural
    constraints fail, which would indicate a transcription error."""
    relation = defining_relation().to_ring(QQ)
    E = abstract_Q().mul(abstract_Q()) - abstract_H() ** 3 - relation
    if E.degree_in(("q",)) != 0:
        raise PolyError("derivation failed: residual q-dependence")
    if E.degree_in(("h",)) > 1:
        raise PolyError("derivation failed: residual h-degree above 1")
    f_only = ABSTRACT12_NAMES[2:]
    s4_12 = E.coefficient_of({"h": 1}, ("q", "h")) * Fraction(1, 27)
    e0 = E.coefficient_of({}, ("q", "h"))
    c0 = (abstract_H() - Polynomial.variable(QQ, ABSTRACT12, "h")).coefficient_of(
        {}, ("q", "h")
    )
    t6_12 = (e0 - c0.mul(s4_12) * 27) * Fraction(-4, 27)
    s4 = s4_12.convert(gen.F_VARS)
    t6 = t6_12.convert(gen.F_VARS)
    if s4.total_degree() != 4 or gen.f_weight(s4) != (4, 4, 4):
        raise PolyError("quartic invariant is not multihomogeneous of weight (4,4,4)")
    if t6.total_degree() != 6 or gen.f_weight(t6) != (6, 6, 6):
        raise PolyError("sextic invariant is not multihomogeneous of weight (6,6,6)")
    return s4, t6


def f_leaves(table=None) -> dict:
    table = table or gen.generator_table()
    return {f"f{n}": Leaf(table.f[n - 1]) for n in range(1, 11)}


def compose_with_f(p_f: Polynomial, table=None) -> Expr:
    """An f-ring polynomial as an expression over the 27 triple coordinates."""
    return PolyAt(p_f, f_leaves(table))


def evaluate_f_form_on_triple(p_f: Polynomial, T) -> Polynomial:
    """Compose an f-ring polynomial with the pencil coefficients of a
    concrete triple; exact, in the triple's own variables."""
    fs = gen.f_all(T)
    bindings = {
        f"f{n}": fs[ijk].to_ring(QQ) for n, ijk in enumerate(gen.F_INDEX, start=1)
    }
    return p_f.to_ring(QQ).substitute(bindings)


# -- the two big identities -----------------------------------------------------


def main_relation_expr(relation: Polynomial | None = None) -> Expr:
    """relation(q, h, f1..f10) with the actual generator polynomials bound in."""
    table = gen.generator_table()
    rel = relation if relation is not None else defining_relation()
    bindings = dict(f_leaves(table))
    bindings["q"] = Leaf(table.q)
    bindings["h"] = Leaf(table.h)
    return PolyAt(rel, bindings)


THEOREM1_VARS = VariableSet(("Q", "H", "S", "T"))


@lru_cache(maxsize=1)
def _theorem1_outer() -> Polynomial:
    Qv = Polynomial.variable(QQ, THEOREM1_VARS, "Q")
    Hv = Polynomial.variable(QQ, THEOREM1_VARS, "H")
    Sv = Polynomial.variable(QQ, THEOREM1_VARS, "S")
    Tv = Polynomial.variable(QQ, THEOREM1_VARS, "T")
    return Qv.mul(Qv) - Hv ** 3 - Hv.mul(Sv) * 27 + Tv * Fraction(27, 4)


def theorem1_expr(s4: Polynomial | None = None, t6: Polynomial | None = None) -> Expr:
    """Q^2 - H^3 - 27*H*S + (27/4)*T over the 27 coordinates; exercised through
    the rational-arithmetic path and the f-ring composition of S and T."""
    table = gen.generator_table()
    if s4 is None or t6 is None:
        s4, t6 = derive_st()
    leaves = f_leaves(table)
    return PolyAt(
        _theorem1_outer(),
        {
            "Q": Leaf(table.Q),
            "H": Leaf(table.H),
            "S": PolyAt(s4, leaves),
            "T": PolyAt(t6, leaves),
        },
    )


def verify_main_relation(cfg: RunConfig, relation: Polynomial | None = None) -> CheckResult:
    expr = main_relation_expr(relation)
    key = "main-relation" if relation is None else None
    return run_identity("main-relation", expr, cfg, builder_key=key)


def verify_theorem1(cfg: RunConfig) -> CheckResult:
    return run_identity("theorem1", theorem1_expr(), cfg, builder_key="theorem1")


register_expr_builder("main-relation", main_relation_expr)
register_expr_builder("theorem1", theorem1_expr)


# -- exact special-triple evaluations -------------------------------------------


def special_triple_checks() -> list:
    """The exact evaluation identities on the skew and Weierstrass triples."""
    checks = []
    skew = gen.skew_triple()
    fs = gen.f_all(skew)
    checks.append(
        boolean_check(
            "skew: all ten pencil coefficients vanish identically",
            lambda: all(p.is_zero() for p in fs.values()),
        )
    )
    det_p = gen.skew_parameter_matrix().determinant()
    checks.append(
        boolean_check(
            "skew: h equals det(P)^2 as a 9-variable identity",
            lambda: gen.h_poly(skew) == det_p.mul(det_p),
        )
    )
    checks.append(
        boolean_check(
            "skew: q equals det(P)^3 as a 9-variable identity",
            lambda: gen.q_poly(skew) == det_p.mul(det_p).mul(det_p),
        )
    )

    w = gen.weierstrass_triple()
    pencil = gen.pencil_determinant(w)
    expected = textio.parse_text(
        "t3^3 + t2^2*t1 - b^2*t1^2*t3 - a^2*t1^3", pencil.vars, ZZ
    )
    checks.append(
        boolean_check("weierstrass: pencil determinant", lambda: pencil == expected)
    )
    a_var = Polynomial.variable(QQ, gen.WEIERSTRASS_VARS, "a")
    b_var = Polynomial.variable(QQ, gen.WEIERSTRASS_VARS, "b")
    checks.append(
        boolean_check("weierstrass: H = -b", lambda: gen.H_poly(w) == -b_var)
    )
    checks.append(
        boolean_check("weierstrass: Q = -a", lambda: gen.Q_poly(w) == -a_var)
    )
    s4, t6 = derive_st()
    checks.append(
        boolean_check(
            "weierstrass: quartic invariant = -b^2/27",
            lambda: evaluate_f_form_on_triple(s4, w) == b_var.mul(b_var) * Fraction(-1, 27),
        )
    )
    checks.append(
        boolean_check(
            "weierstrass: sextic invariant = -4*a^2/27",
            lambda: evaluate_f_form_on_triple(t6, w) == a_var.mul(a_var) * Fraction(-4, 27),
        )
    )
    checks.append(
        boolean_check(
            "skew: quartic and sextic invariants vanish",
            lambda: evaluate_f_form_on_triple(s4, skew).is_zero()
            and evaluate_f_form_on_triple(t6, skew).is_zero(),
        )
    )
    return checks


def derive_st_checks() -> list:
    """Structural checks that lock the transcriptions together."""
    checks = []
    relation = defining_relation()
    checks.append(
        boolean_check(
            f"relation transcription: {RELATION_TERM_COUNT} terms, pinned digest",
            lambda: len(relation) == RELATION_TERM_COUNT
            and relation_digest(relation) == RELATION_DIGEST,
        )
    )
    checks.append(
        boolean_check(
            "relation: every term has weighted degree 18",
            lambda: weighted_degrees(relation, RELATION_WEIGHTS) == {18},
        )
    )

    def structural():
        s4, t6 = derive_st()
        return (
            s4.total_degree() == 4
            and t6.total_degree() == 6
            and gen.f_weight(s4) == (4, 4, 4)
            and gen.f_weight(t6) == (6, 6, 6)
        )

    checks.append(
        boolean_check(
            "derivation: residual is h-linear, q-free; degrees 4 and 6", structural
        )
    )
    return checks
