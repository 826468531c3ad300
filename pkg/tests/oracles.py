"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive and shares no code with the package:
polynomials are dicts mapping exponent tuples to coefficients, determinants
expand recursively along the first row, and modular evaluation is a direct
term-by-term sum.
"""

from fractions import Fraction
from itertools import permutations


def naive_add(a, b):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
        if out[k] == 0:
            del out[k]
    return out


def naive_mul(a, b):
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def naive_scale(a, c):
    if c == 0:
        return {}
    return {k: v * c for k, v in a.items()}


def from_package(p):
    """Convert a package polynomial to the naive representation."""
    return {exps: c for exps, c in p.sorted_terms()}


def leibniz_determinant_package(m):
    """Signed permutation sum over package polynomials; n! terms, no DP."""
    n = m.n
    total = None
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = None
        for i in range(n):
            e = m.rows[i][perm[i]]
            prod = e if prod is None else prod.mul(e)
        term = prod * sign
        total = term if total is None else total + term
    return total


def rowexp_determinant_package(m):
    """Recursive first-row expansion skipping zero entries; independent of
    the package's subset-DP and cheap on sparse block matrices."""
    n = m.n

    def det(rows):
        if len(rows) == 1:
            return rows[0][0]
        acc = None
        sign = 1
        for j, e in enumerate(rows[0]):
            if e.terms:
                minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
                part = e.mul(det(minor)) * sign
                acc = part if acc is None else acc + part
            sign = -sign
        return acc

    return det([list(r) for r in m.rows])


def naive_eval_mod(p, point, prime):
    """Direct term-by-term evaluation of a package polynomial mod prime."""
    total = 0
    for exps, c in p.sorted_terms():
        if isinstance(c, Fraction):
            c = c.numerator * pow(c.denominator, -1, prime)
        v = c % prime
        for name, e in zip(p.vars.names, exps):
            if e:
                v = v * pow(point[name] % prime, e, prime) % prime
        total = (total + v) % prime
    return total


def mat_mul_int(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)
    ]


def mat_trace_int(a):
    return sum(a[i][i] for i in range(len(a)))


def mat_word_int(*mats):
    """Left-to-right product of plain integer matrices."""
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul_int(out, m)
    return out


def char_coeffs_int(a):
    """(t, s, d) with det(zI + A) = z^3 + t z^2 + s z + d, for a plain 3x3."""
    t = mat_trace_int(a)
    a2 = mat_mul_int(a, a)
    s = Fraction(t * t - mat_trace_int(a2), 2)
    d = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    return t, s, d
