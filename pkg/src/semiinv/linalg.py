"""Exact rational Gaussian elimination for small dense systems.

Systems here have at most a dozen unknowns but can have tens of thousands of
equations (one per monomial of a polynomial identity), most of them repeated
up to scale.  Rows are therefore normalized and deduplicated before
elimination, and everything runs in Fractions; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class LinAlgError(Exception):
    pass


class InconsistentSystem(LinAlgError):
    """No solution: a reduced row has zero coefficients but nonzero RHS."""


class UnderdeterminedSystem(LinAlgError):
    """The coefficient matrix does not have full column rank."""


def _normalize_row(coeffs: Sequence, rhs) -> tuple | None:
    """Scale to coprime integers with positive leading entry; None for 0 = 0."""
    row = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    den = 1
    for c in row:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return None
    ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-u for u in ints]
            break
    return tuple(ints)


def solve_unique(rows: Iterable[tuple], nunknowns: int) -> list:
    """Solve for the unique exact solution of `coeffs . x = rhs` rows.

    Each row is a pair (coefficient sequence, rhs).  Raises
    InconsistentSystem or UnderdeterminedSystem when the system has no or
    several solutions.
    """
    seen = set()
    unique = []
    for coeffs, rhs in rows:
        norm = _normalize_row(coeffs, rhs)
        if norm is None or norm in seen:
            continue
        seen.add(norm)
        unique.append([Fraction(v) for v in norm])

    pivots: dict = {}  # column -> reduced row
    width = nunknowns + 1
    for row in unique:
        if len(row) != width:
            raise LinAlgError(f"row of length {len(row)}, expected {width}")
        for col in range(nunknowns):
            if row[col] and col in pivots:
                factor = row[col]
                prow = pivots[col]
                for j in range(col, width):
                    row[j] -= factor * prow[j]
        lead = next((c for c in range(nunknowns) if row[c]), None)
        if lead is None:
            if row[nunknowns]:
                raise InconsistentSystem("0 = nonzero after reduction")
            continue
        inv = 1 / row[lead]
        row = [c * inv for c in row]
        pivots[lead] = row

    if len(pivots) < nunknowns:
        raise UnderdeterminedSystem(
            f"rank {len(pivots)} < {nunknowns} unknowns"
        )

    # back substitution
    solution = [Fraction(0)] * nunknowns
    for col in sorted(pivots, reverse=True):
        row = pivots[col]
        val = row[nunknowns]
        for j in range(col + 1, nunknowns):
            if row[j]:
                val -= row[j] * solution[j]
        solution[col] = val
    return solution


def rank(vectors: Iterable[Sequence]) -> int:
    """Rank over QQ of a family of vectors (exact elimination)."""
    pivots: dict = {}
    for vec in vectors:
        row = [Fraction(v) for v in vec]
        for col, prow in pivots.items():
            if row[col]:
                factor = row[col]
                for j in range(len(row)):
                    row[j] -= factor * prow[j]
        lead = next((i for i, c in enumerate(row) if c), None)
        if lead is None:
            continue
        inv = 1 / row[lead]
        pivots[lead] = [c * inv for c in row]
    return len(pivots)
