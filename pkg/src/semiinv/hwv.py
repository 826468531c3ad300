"""Weight vectors, unipotent fixedness, and highest-weight corrections.

A polynomial in the 27 triple coordinates is a weight vector of weight alpha
iff it is multihomogeneous of multidegree alpha; fixedness under the two
elementary upper transvections certifies a highest weight vector, and
fixedness under all four elementary transvections certifies SL3-invariance
(they generate a Zariski-dense subgroup of SL3, and the stabilizer of a
polynomial is closed).

The correction coefficients attached to h and q are recomputed here from
scratch by exact rational elimination on the fixedness equations, which the
test suite compares against the pinned tables used to build H and Q.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from . import generators as gen
from . import linalg
from .poly import QQ, Polynomial

InconsistentSystem = linalg.InconsistentSystem
UnderdeterminedSystem = linalg.UnderdeterminedSystem


def multidegree(F: Polynomial) -> tuple | None:
    """Degree vector in the entries of (A1, A2, A3); None when mixed."""
    return F.convert(gen.TRIPLE_VARS).multidegree(gen.BLOCK_NAMES)


def is_weight_vector(F: Polynomial, alpha: Sequence[int]) -> bool:
    """True iff the diagonal torus scales F by z1^a1 z2^a2 z3^a3, i.e. F is
    multihomogeneous of multidegree alpha."""
    if F.is_zero():
        return False
    return multidegree(F) == tuple(alpha)


def diagonal_action_weight(F: Polynomial) -> tuple | None:
    """Weight read off from the symbolic diagonal substitution, kept as an
    independent cross-check of the multidegree route: the substituted
    polynomial must equal z1^a1 z2^a2 z3^a3 times the original."""
    zvars = gen.TRIPLE_VARS.extend(("z1", "z2", "z3"))
    ring = F.ring
    zero = Polynomial.zero(ring, zvars)
    diag = [[zero] * 3 for _ in range(3)]
    for i in range(3):
        diag[i][i] = Polynomial.variable(ring, zvars, f"z{i+1}")
    acted = gen.act_on_function(diag, F, vars=zvars)
    alpha = acted.multidegree((("z1",), ("z2",), ("z3",)))
    if alpha is None:
        return None
    scale = Polynomial.monomial(
        ring, zvars, {"z1": alpha[0], "z2": alpha[1], "z3": alpha[2]}
    )
    if acted == scale.mul(F.convert(zvars)):
        return alpha
    return None


def is_fixed_by(F: Polynomial, g: Sequence[Sequence]) -> bool:
    return gen.act_on_function(g, F) == F


def is_fixed_by_unipotents(F: Polynomial) -> bool:
    """Fixedness under I+E12 and I+E23; these generate a group Zariski dense
    in the unipotent upper triangulars, so this certifies a highest weight
    vector when F is also a weight vector."""
    return is_fixed_by(F, gen.U12) and is_fixed_by(F, gen.U23)


def sl3_invariance_certificate(F: Polynomial) -> bool:
    """Fixedness under all four elementary transvections; they generate a
    Zariski-dense subgroup of SL3, so fixedness certifies SL3-invariance."""
    return all(is_fixed_by(F, g) for g in gen.ELEMENTARY_TRANSVECTIONS.values())


# -- certificates for polynomials given in the f-variables ---------------------


@lru_cache(maxsize=None)
def _span_action_verified(which: str) -> dict:
    """Exact identities g.f_n = sum_m M[n][m] f_m for one transvection,
    verified by full expansion over the 27 coordinates before the induced
    f-ring substitution is trusted."""
    g = gen.ELEMENTARY_TRANSVECTIONS[which]
    table = gen.generator_table()
    mat = gen.f_action_matrix(g)
    for n in range(10):
        acted = gen.act_on_function(g, table.f[n].to_ring(QQ))
        combo = Polynomial.zero(QQ, gen.TRIPLE_VARS)
        for m in range(10):
            if mat[n][m]:
                combo = combo + table.f[m].to_ring(QQ) * mat[n][m]
        if acted != combo:
            raise linalg.LinAlgError(
                f"span action of {which} failed exact verification"
            )
    return gen.f_span_substitution(g)


def sl3_certificate_for_f_polynomial(p_f: Polynomial) -> bool:
    """SL3-invariance certificate for a polynomial written in the f-variables.

    Because substitution is a ring homomorphism, equality of p_f with its
    image under the (exactly verified) induced span action implies the full
    27-variable fixedness identity, without expanding the composition."""
    p_f = p_f.to_ring(QQ)
    for which in gen.ELEMENTARY_TRANSVECTIONS:
        subst = _span_action_verified(which)
        if p_f.substitute(subst) != p_f:
            return False
    return True


# -- exact recomputation of the correction coefficients -------------------------


def _difference_rows(base: Polynomial, basis: list, g) -> list:
    """Linear equations on the basis coefficients from g-fixedness of
    base + sum(beta_i * basis_i), one row per monomial."""
    d_base = gen.act_on_function(g, base) - base
    d_basis = [gen.act_on_function(g, m) - m for m in basis]
    keys = set(d_base.terms)
    for d in d_basis:
        keys.update(d.terms)
    rows = []
    for key in keys:
        rows.append(
            (
                tuple(d.terms.get(key, 0) for d in d_basis),
                -d_base.terms.get(key, 0),
            )
        )
    return rows


def solve_hwv_correction(base: Polynomial, basis: Sequence[Polynomial]) -> list:
    """Solve for the unique rational coefficients beta with base + sum(beta_i
    * basis_i) fixed by both elementary upper transvections.

    Raises InconsistentSystem when no correction in the span works and
    UnderdeterminedSystem when several do.
    """
    base = base.convert(gen.TRIPLE_VARS).to_ring(QQ)
    basis = [m.convert(gen.TRIPLE_VARS).to_ring(QQ) for m in basis]
    md = base.multidegree(gen.BLOCK_NAMES)
    if md is None:
        raise linalg.LinAlgError("base is not multihomogeneous")
    for m in basis:
        if m.multidegree(gen.BLOCK_NAMES) != md:
            raise linalg.LinAlgError("basis element of different multidegree")
    rows = []
    for g in (gen.U12, gen.U23):
        rows.extend(_difference_rows(base, list(basis), g))
    if not basis:
        # no unknowns: the system is consistent iff every row is 0 = 0
        for _, rhs in rows:
            if rhs:
                raise InconsistentSystem("base is not fixed and no basis was given")
        return []
    return linalg.solve_unique(rows, len(basis))


def h_correction_basis(table=None) -> list:
    table = table or gen.generator_table()
    f = table.f_num
    return [f(2).mul(f(9)), f(3).mul(f(8)), f(4).mul(f(6)), f(5).mul(f(5))]


def q_correction_basis(table=None) -> list:
    table = table or gen.generator_table()
    f = table.f_num
    return [
        table.h.mul(f(5)),
        f(1).mul(f(7)).mul(f(10)),
        f(1).mul(f(8)).mul(f(9)),
        f(7).mul(f(3)).mul(f(6)),
        f(10).mul(f(2)).mul(f(4)),
        f(5).mul(f(4)).mul(f(6)),
        f(2).mul(f(6)).mul(f(8)),
        f(4).mul(f(3)).mul(f(9)),
    ]


@lru_cache(maxsize=1)
def solve_h_correction() -> list:
    """Coefficients on [f2*f9, f3*f8, f4*f6, f5^2] making h highest weight."""
    table = gen.generator_table()
    return solve_hwv_correction(table.h, h_correction_basis(table))


@lru_cache(maxsize=1)
def solve_q_correction() -> list:
    """Coefficients on [h*f5, f1*f7*f10, f1*f8*f9, f7*f3*f6, f10*f2*f4,
    f5*f4*f6, f2*f6*f8, f4*f3*f9] making q highest weight."""
    table = gen.generator_table()
    return solve_hwv_correction(table.q, q_correction_basis(table))
