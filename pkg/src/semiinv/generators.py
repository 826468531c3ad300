"""The generating invariants of 3x3 matrix triples and the GL3 action.

The ten cubic generators are the coefficients of det(t1*A1 + t2*A2 + t3*A3);
h and q are designated t-coefficients of 6x6 and 9x9 block determinants.  H
and Q are the rational corrections of h and q that are fixed by the unipotent
upper-triangular subgroup (highest weight vectors of weights (2,2,2) and
(3,3,3)).  Everything is built exactly, as polynomials in the 27 coordinate
functions of the generic triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from . import linalg
from .matrix import PolyMatrix, block_matrix
from .poly import QQ, ZZ, Polynomial, PolyError, Ring, VariableSet, unify_rings

# Coordinate functions of the generic triple: entry (i,j) of matrix r is x{r}_{ij}.
TRIPLE_NAMES = tuple(
    f"x{r}_{i}{j}" for r in (1, 2, 3) for i in (1, 2, 3) for j in (1, 2, 3)
)
TRIPLE_VARS = VariableSet(TRIPLE_NAMES)
BLOCK_NAMES = tuple(TRIPLE_NAMES[9 * r : 9 * r + 9] for r in range(3))

T_NAMES = ("t1", "t2", "t3", "t4", "t5", "t6")

# f-numbering: the ten exponent triples (i, j, k) with i+j+k = 3, in the
# order that defines f1..f10.
F_INDEX = (
    (3, 0, 0),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (1, 1, 1),
    (1, 0, 2),
    (0, 3, 0),
    (0, 2, 1),
    (0, 1, 2),
    (0, 0, 3),
)
F_NAMES = tuple(f"f{i}" for i in range(1, 11))
F_VARS = VariableSet(F_NAMES)

# Correction coefficients making H = h + sum(c * f_i * f_j) and
# Q = q + sum(c * prod) highest weight vectors; "h" marks an h-factor.
H_CORRECTIONS = (
    (Fraction(-1, 3), (2, 9)),
    (Fraction(-1, 3), (3, 8)),
    (Fraction(2, 3), (4, 6)),
    (Fraction(1, 12), (5, 5)),
)
Q_CORRECTIONS = (
    (Fraction(-1, 2), ("h", 5)),
    (Fraction(3, 2), (1, 7, 10)),
    (Fraction(-1, 2), (1, 8, 9)),
    (Fraction(-1, 2), (3, 6, 7)),
    (Fraction(-1, 2), (2, 4, 10)),
    (Fraction(-1, 2), (4, 5, 6)),
    (Fraction(1, 2), (2, 6, 8)),
    (Fraction(1, 2), (3, 4, 9)),
)


@dataclass(frozen=True)
class MatrixTriple:
    """Three 3x3 polynomial matrices over one shared ring and variable set."""

    a1: PolyMatrix
    a2: PolyMatrix
    a3: PolyMatrix

    def __post_init__(self):
        for m in (self.a1, self.a2, self.a3):
            if m.n != 3:
                raise PolyError("triples consist of 3x3 matrices")
            if m.ring != self.a1.ring or m.vars != self.a1.vars:
                raise PolyError("triple components must share ring and variables")

    @property
    def vars(self) -> VariableSet:
        return self.a1.vars

    @property
    def ring(self) -> Ring:
        return self.a1.ring

    def components(self):
        return (self.a1, self.a2, self.a3)


def generic_triple() -> MatrixTriple:
    mats = []
    for r in (1, 2, 3):
        mats.append(
            PolyMatrix.from_names(
                ZZ, TRIPLE_VARS, [[f"x{r}_{i}{j}" for j in (1, 2, 3)] for i in (1, 2, 3)]
            )
        )
    return MatrixTriple(*mats)


def generic_pair_triple() -> MatrixTriple:
    """(A, B, I): the generic triple specialized so the third matrix is the identity."""
    g = generic_triple()
    ident = PolyMatrix.identity(ZZ, TRIPLE_VARS, 3)
    return MatrixTriple(g.a1, g.a2, ident)


SKEW_PARAM_NAMES = ("x1", "y1", "z1", "x2", "y2", "z2", "x3", "y3", "z3")
SKEW_VARS = VariableSet(SKEW_PARAM_NAMES)


def skew_triple() -> MatrixTriple:
    """The generic skew-symmetric triple with parameter columns (x_r, y_r, z_r)."""

    def comp(r):
        x = Polynomial.variable(ZZ, SKEW_VARS, f"x{r}")
        y = Polynomial.variable(ZZ, SKEW_VARS, f"y{r}")
        zz = Polynomial.variable(ZZ, SKEW_VARS, f"z{r}")
        zero = Polynomial.zero(ZZ, SKEW_VARS)
        return PolyMatrix([[zero, -x, -y], [x, zero, -zz], [y, zz, zero]])

    return MatrixTriple(comp(1), comp(2), comp(3))


def skew_parameter_matrix() -> PolyMatrix:
    """Columns are the parameter vectors of the three skew components."""
    return PolyMatrix.from_names(
        ZZ, SKEW_VARS, [["x1", "x2", "x3"], ["y1", "y2", "y3"], ["z1", "z2", "z3"]]
    )


WEIERSTRASS_VARS = VariableSet(("a", "b"))


def weierstrass_triple() -> MatrixTriple:
    """The triple whose determinant pencil is the Weierstrass cubic
    t3^3 + t2^2*t1 - b^2*t1^2*t3 - a^2*t1^3."""
    a = Polynomial.variable(ZZ, WEIERSTRASS_VARS, "a")
    b = Polynomial.variable(ZZ, WEIERSTRASS_VARS, "b")
    zero = Polynomial.zero(ZZ, WEIERSTRASS_VARS)
    one = Polynomial.constant(ZZ, WEIERSTRASS_VARS, 1)
    m1 = PolyMatrix([[one, zero, zero], [zero, a, -b], [b, zero, -a]])
    m2 = PolyMatrix([[zero, zero, zero], [zero, one, zero], [zero, zero, one]])
    m3 = PolyMatrix([[zero, one, zero], [zero, zero, one], [one, zero, zero]])
    return MatrixTriple(m1, m2, m3)


def scalar_triple(a1, a2, a3, vars: VariableSet | None = None) -> MatrixTriple:
    """Build a triple from plain 3x3 arrays of scalars."""
    vs = vars if vars is not None else VariableSet(("u",))
    return MatrixTriple(
        PolyMatrix.from_scalars(ZZ, vs, a1),
        PolyMatrix.from_scalars(ZZ, vs, a2),
        PolyMatrix.from_scalars(ZZ, vs, a3),
    )


# -- pencil machinery ---------------------------------------------------------


def _pencil_vars(vars: VariableSet) -> VariableSet:
    return vars.extend(T_NAMES)


def _lift(m: PolyMatrix, vars: VariableSet) -> PolyMatrix:
    return m.map_entries(lambda e: e.convert(vars))


def pencil_determinant(T: MatrixTriple) -> Polynomial:
    """det(t1*A1 + t2*A2 + t3*A3) over the triple's variables extended by t1..t6."""
    w = _pencil_vars(T.vars)
    acc = None
    for t_name, m in zip(("t1", "t2", "t3"), T.components()):
        part = _lift(m, w).scale(Polynomial.variable(m.ring, w, t_name))
        acc = part if acc is None else acc + part
    return acc.determinant()


def _extract_t(p: Polynomial, exps: Mapping[str, int], target: VariableSet) -> Polynomial:
    return p.coefficient_of(exps, T_NAMES).convert(target)


def f_all(T: MatrixTriple) -> dict:
    """All ten pencil coefficients, keyed by the exponent triple (i, j, k)."""
    det = pencil_determinant(T)
    return {
        (i, j, k): _extract_t(det, {"t1": i, "t2": j, "t3": k}, T.vars)
        for (i, j, k) in F_INDEX
    }


def h_poly(T: MatrixTriple) -> Polynomial:
    """Coefficient of t1^2 t2^2 t3^2 in the 6x6 block determinant
    [[t2*A2, t1*A1], [t1*A1, t3*A3]]."""
    w = _pencil_vars(T.vars)
    ring = T.ring

    def tv(name):
        return Polynomial.variable(ring, w, name)

    a1 = _lift(T.a1, w)
    a2 = _lift(T.a2, w)
    a3 = _lift(T.a3, w)
    m = block_matrix(
        [
            [a2.scale(tv("t2")), a1.scale(tv("t1"))],
            [a1.scale(tv("t1")), a3.scale(tv("t3"))],
        ]
    )
    return _extract_t(m.determinant(), {"t1": 2, "t2": 2, "t3": 2}, T.vars)


def q_poly(T: MatrixTriple) -> Polynomial:
    """Coefficient of t1^2 t2 t3^2 t4 t5^2 t6 in the 9x9 block determinant
    [[0, t1*A1, t2*A2], [t4*A1, 0, t3*A3], [t5*A2, t6*A3, 0]]."""
    w = _pencil_vars(T.vars)
    ring = T.ring

    def tv(name):
        return Polynomial.variable(ring, w, name)

    a1 = _lift(T.a1, w)
    a2 = _lift(T.a2, w)
    a3 = _lift(T.a3, w)
    m = block_matrix(
        [
            [None, a1.scale(tv("t1")), a2.scale(tv("t2"))],
            [a1.scale(tv("t4")), None, a3.scale(tv("t3"))],
            [a2.scale(tv("t5")), a3.scale(tv("t6")), None],
        ]
    )
    return _extract_t(
        m.determinant(), {"t1": 2, "t2": 1, "t3": 2, "t4": 1, "t5": 2, "t6": 1}, T.vars
    )


def combine_h_correction(h, f_by_num: Mapping[int, Polynomial], coeffs=H_CORRECTIONS):
    """h plus the quadratic f-correction; exact rational arithmetic."""
    acc = h.to_ring(QQ)
    for c, (i, j) in coeffs:
        acc = acc + f_by_num[i].to_ring(QQ).mul(f_by_num[j].to_ring(QQ)) * c
    return acc


def combine_q_correction(q, h, f_by_num: Mapping[int, Polynomial], coeffs=Q_CORRECTIONS):
    """q plus the cubic correction (one term carries an h-factor)."""
    acc = q.to_ring(QQ)
    for c, factors in coeffs:
        prod = None
        for fct in factors:
            p = h.to_ring(QQ) if fct == "h" else f_by_num[fct].to_ring(QQ)
            prod = p if prod is None else prod.mul(p)
        acc = acc + prod * c
    return acc


def H_poly(T: MatrixTriple) -> Polynomial:
    fs = f_all(T)
    f_by_num = {n + 1: fs[ijk] for n, ijk in enumerate(F_INDEX)}
    return combine_h_correction(h_poly(T), f_by_num)


def Q_poly(T: MatrixTriple) -> Polynomial:
    fs = f_all(T)
    f_by_num = {n + 1: fs[ijk] for n, ijk in enumerate(F_INDEX)}
    return combine_q_correction(q_poly(T), h_poly(T), f_by_num)


@dataclass(frozen=True)
class GeneratorTable:
    """The named invariants of the generic triple as explicit polynomials."""

    f_by_ijk: dict
    f: tuple  # f1..f10 in the fixed numbering
    h: Polynomial
    q: Polynomial
    H: Polynomial
    Q: Polynomial

    def f_num(self, n: int) -> Polynomial:
        return self.f[n - 1]

    def by_name(self) -> dict:
        out = {}
        for n, ijk in enumerate(F_INDEX, start=1):
            p = self.f[n - 1]
            out[f"f{ijk[0]}{ijk[1]}{ijk[2]}"] = p
            out[f"f{n}"] = p
        out["h"] = self.h
        out["q"] = self.q
        out["HH"] = self.H
        out["QQ"] = self.Q
        return out


def _build_generator_table() -> GeneratorTable:
    T = generic_triple()
    fs = f_all(T)
    f_list = tuple(fs[ijk] for ijk in F_INDEX)
    f_by_num = {n + 1: f_list[n] for n in range(10)}
    h = h_poly(T)
    q = q_poly(T)
    return GeneratorTable(
        f_by_ijk=fs,
        f=f_list,
        h=h,
        q=q,
        H=combine_h_correction(h, f_by_num),
        Q=combine_q_correction(q, h, f_by_num),
    )


@lru_cache(maxsize=1)
def generator_table() -> GeneratorTable:
    return _build_generator_table()


# -- the right GL3 action -----------------------------------------------------


def _entry_poly(e, ring: Ring, vars: VariableSet) -> Polynomial:
    if isinstance(e, Polynomial):
        return e.convert(vars) if e.vars != vars else e
    return Polynomial.constant(ring, vars, e)


def act_on_triple(g: Sequence[Sequence], T: MatrixTriple) -> MatrixTriple:
    """Right action: component r of the result is sum_i g[i][r] * A_i."""
    comps = []
    ring = T.ring
    for e_row in g:
        for e in e_row:
            if isinstance(e, Polynomial):
                ring = unify_rings(ring, e.ring)
            elif isinstance(e, Fraction) and e.denominator != 1:
                ring = unify_rings(ring, QQ)
    mats = [m.map_entries(lambda p: p.to_ring(ring)) for m in T.components()]
    vars = T.vars
    for c in range(3):
        acc = None
        for r in range(3):
            coeff = _entry_poly(g[r][c], ring, vars).to_ring(ring)
            if not coeff.terms:
                continue
            part = mats[r].scale(coeff)
            acc = part if acc is None else acc + part
        if acc is None:
            acc = PolyMatrix.zero(ring, vars, 3)
        comps.append(acc)
    return MatrixTriple(*comps)


def action_substitution(g: Sequence[Sequence], vars: VariableSet, ring: Ring) -> dict:
    """Variable bindings realizing F -> g.F on the 27 coordinate functions:
    x{c}_{ij} maps to sum_r g[r][c] * x{r}_{ij}."""
    bindings = {}
    for c in (1, 2, 3):
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                acc = Polynomial.zero(ring, vars)
                for r in (1, 2, 3):
                    coeff = g[r - 1][c - 1]
                    if isinstance(coeff, Polynomial):
                        term = coeff.convert(vars).to_ring(ring).mul(
                            Polynomial.variable(ring, vars, f"x{r}_{i}{j}")
                        )
                    else:
                        if not coeff:
                            continue
                        term = Polynomial.variable(ring, vars, f"x{r}_{i}{j}") * coeff
                    acc = acc + term
                bindings[f"x{c}_{i}{j}"] = acc
    return bindings


def act_on_function(g: Sequence[Sequence], F: Polynomial, vars: VariableSet | None = None) -> Polynomial:
    """g.F maps a triple T to F(T.g); computed by exact substitution."""
    target = vars if vars is not None else F.vars
    ring = F.ring
    for row in g:
        for e in row:
            if isinstance(e, Polynomial):
                ring = unify_rings(ring, e.ring)
            elif isinstance(e, Fraction) and e.denominator != 1:
                ring = unify_rings(ring, QQ)
    bindings = action_substitution(g, target, ring)
    Fc = F if F.vars == target else F.convert(target)
    return Fc.substitute(bindings)


def transvection(i: int, j: int) -> list:
    """I + E_ij as a plain scalar matrix."""
    g = [[1 if a == b else 0 for b in range(3)] for a in range(3)]
    g[i - 1][j - 1] = 1
    return g


U12 = transvection(1, 2)
U23 = transvection(2, 3)
U21 = transvection(2, 1)
U32 = transvection(3, 2)
ELEMENTARY_TRANSVECTIONS = {"u12": U12, "u23": U23, "u21": U21, "u32": U32}


def group_element_determinant(g: Sequence[Sequence]) -> Fraction:
    """Determinant of a scalar 3x3 group element (for SL3 membership asserts)."""
    m = [[Fraction(e) for e in row] for row in g]
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


# -- the induced linear action on the span of the ten f's ---------------------

_T3_VARS = VariableSet(("t1", "t2", "t3"))


def f_action_matrix(g: Sequence[Sequence]) -> list:
    """10x10 rational matrix M with g.f_n = sum_m M[n][m] f_m, computed by
    expanding the substituted pencil monomials in the t-variables."""
    lin = []
    for r in range(3):
        acc = Polynomial.zero(QQ, _T3_VARS)
        for c in range(3):
            coeff = Fraction(g[r][c])
            if coeff:
                acc = acc + Polynomial.variable(QQ, _T3_VARS, f"t{c+1}") * coeff
        lin.append(acc)
    rows = [{} for _ in F_INDEX]
    for m_idx, (l, m, n) in enumerate(F_INDEX):
        prod = lin[0] ** l * lin[1] ** m * lin[2] ** n
        for n_idx, (i, j, k) in enumerate(F_INDEX):
            c = prod.coefficient({"t1": i, "t2": j, "t3": k})
            if c:
                rows[n_idx][m_idx] = Fraction(c)
    return [[row.get(m_idx, Fraction(0)) for m_idx in range(10)] for row in rows]


def f_span_substitution(g: Sequence[Sequence], ring: Ring = QQ) -> dict:
    """Bindings on the abstract f-ring realizing the action on f-polynomials:
    f_n -> sum_m M[n][m] f_m."""
    mat = f_action_matrix(g)
    out = {}
    for n in range(10):
        acc = Polynomial.zero(ring, F_VARS)
        for m in range(10):
            c = mat[n][m]
            if c:
                acc = acc + Polynomial.variable(ring, F_VARS, F_NAMES[m]) * ring.normalize(c)
        out[F_NAMES[n]] = acc
    return out


def decompose_in_f_span(F: Polynomial) -> list:
    """Exact coordinates of F in the basis f1..f10; raises
    linalg.InconsistentSystem if F is outside the span."""
    table = generator_table()
    fs = [p.to_ring(QQ) for p in table.f]
    target = F.convert(TRIPLE_VARS).to_ring(QQ)
    keys = set()
    for p in fs:
        keys.update(p.terms)
    keys.update(target.terms)
    rows = []
    for key in sorted(keys):
        rows.append(
            (
                tuple(p.terms.get(key, 0) for p in fs),
                target.terms.get(key, 0),
            )
        )
    return linalg.solve_unique(rows, 10)


# -- classical cubic invariants through the coefficient dictionary ------------

CUBIC_NAMES = ("a", "a2", "a3", "b", "b1", "b3", "c", "c1", "c2", "m")
CUBIC_VARS = VariableSet(CUBIC_NAMES)

# f-variable -> (cubic coefficient, scale): f_n corresponds to scale * coeff.
_CUBIC_OF_F = {
    "f1": ("a", 1),
    "f2": ("a2", 3),
    "f3": ("a3", 3),
    "f4": ("b1", 3),
    "f5": ("m", 6),
    "f6": ("c1", 3),
    "f7": ("b", 1),
    "f8": ("b3", 3),
    "f9": ("c2", 3),
    "f10": ("c", 1),
}


def cubic_invariants_from_f_forms(s4_f: Polynomial, t6_f: Polynomial) -> tuple:
    """Rewrite the two derived f-ring invariants as the classical quartic and
    sextic invariants of a ternary cubic with coefficients
    (a, a2, a3, b, b1, b3, c, c1, c2, m)."""
    bindings = {
        fname: Polynomial.variable(QQ, CUBIC_VARS, cname) * scale
        for fname, (cname, scale) in _CUBIC_OF_F.items()
    }
    return s4_f.to_ring(QQ).substitute(bindings), t6_f.to_ring(QQ).substitute(bindings)


def cubic_action_substitution(g: Sequence[Sequence]) -> dict:
    """The unipotent action transported to the cubic-coefficient variables."""
    mat = f_action_matrix(g)
    idx = {name: n for n, name in enumerate(F_NAMES)}
    out = {}
    for fname, (cname, scale) in _CUBIC_OF_F.items():
        n = idx[fname]
        acc = Polynomial.zero(QQ, CUBIC_VARS)
        for gname, (dname, dscale) in _CUBIC_OF_F.items():
            m = idx[gname]
            coeff = mat[n][m] * Fraction(dscale, scale)
            if coeff:
                acc = acc + Polynomial.variable(QQ, CUBIC_VARS, dname) * coeff
        out[cname] = acc
    return out


def f_weight(p_f: Polynomial) -> tuple | None:
    """Multidegree of an f-ring polynomial under the weights of the f's;
    None if the terms disagree."""
    result = None
    for exps, _ in p_f.sorted_terms():
        vec = [0, 0, 0]
        for (i, j, k), e in zip(F_INDEX, exps):
            vec[0] += i * e
            vec[1] += j * e
            vec[2] += k * e
        vec = tuple(vec)
        if result is None:
            result = vec
        elif result != vec:
            return None
    return result
