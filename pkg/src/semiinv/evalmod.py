"""Modular evaluation of polynomials and expression DAGs for identity testing.

Identities too large to expand symbolically are checked by evaluating both
sides at random points over prime fields.  A nonzero polynomial of total
degree d vanishes at a uniformly random point of Z_p^n with probability at
most d/p (Schwartz-Zippel), so N independent points bound the chance of a
missed nonzero identity by (d/p)^N per prime.

Points are drawn from a counter-based SHA-256 stream keyed by
(seed, prime, trial), so serial and parallel runs sample identical points and
any trial can be reproduced in isolation.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .poly import Polynomial, PolyError, VariableSet, _FIELD_MASK, _is_prime_u32

DEFAULT_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)
SMALL_CHAR_PRIMES = (5, 7)

_PRIME_LIMIT = 2**31


def check_prime(p: int, allow_small_char: bool = False) -> int:
    """Validate a verification prime: odd, < 2**31, prime, and not 2 or 3
    unless small characteristics are explicitly allowed."""
    if p % 2 == 0 or p >= _PRIME_LIMIT or not _is_prime_u32(p):
        raise PolyError(f"{p} is not an odd prime below 2**31")
    if p == 3 and not allow_small_char:
        raise PolyError("characteristic 3 requires allow_small_char")
    return p


def sample_point(names: Sequence[str], seed: int, prime: int, trial: int) -> dict:
    """Deterministic uniform point in Z_p^n keyed by (seed, prime, trial)."""
    key = f"semiinv-v1|{seed}|{prime}|{trial}".encode()
    limit = (2**64 // prime) * prime  # rejection bound for uniformity
    values = []
    counter = 0
    while len(values) < len(names):
        digest = hashlib.sha256(key + b"|" + str(counter).encode()).digest()
        counter += 1
        for i in range(0, 32, 8):
            w = int.from_bytes(digest[i : i + 8], "big")
            if w < limit:
                values.append(w % prime)
                if len(values) == len(names):
                    break
    return dict(zip(names, values))


# -- vectorized polynomial evaluation over Z_p ------------------------------


def _compiled(p: Polynomial):
    """Exponent matrix and coefficient data, cached on the polynomial."""
    cache = p._cache
    comp = cache.get("evalmod")
    if comp is None:
        nvars = len(p.vars)
        keys = list(p.terms)
        exps = np.zeros((len(keys), nvars), dtype=np.int64)
        shifts = p.vars._shifts
        for t, k in enumerate(keys):
            for i, sh in enumerate(shifts):
                e = (k >> sh) & _FIELD_MASK
                if e:
                    exps[t, i] = e
        used = [i for i in range(nvars) if exps[:, i].any()]
        nums = []
        dens = []
        for k in keys:
            c = p.terms[k]
            if isinstance(c, Fraction):
                nums.append(c.numerator)
                dens.append(c.denominator)
            else:
                nums.append(c)
                dens.append(1)
        comp = {
            "exps": exps,
            "used": used,
            "nums": nums,
            "dens": dens,
            "coeffs_mod": {},
        }
        cache["evalmod"] = comp
    return comp


def _coeffs_mod(comp, prime: int) -> np.ndarray:
    arr = comp["coeffs_mod"].get(prime)
    if arr is None:
        vals = []
        for num, den in zip(comp["nums"], comp["dens"]):
            if den == 1:
                vals.append(num % prime)
            else:
                if den % prime == 0:
                    raise PolyError(f"denominator {den} not invertible mod {prime}")
                vals.append(num * pow(den, -1, prime) % prime)
        arr = np.array(vals, dtype=np.int64)
        comp["coeffs_mod"][prime] = arr
    return arr


def poly_eval_mod(p: Polynomial, point: Mapping[str, int], prime: int) -> int:
    """Value of p at the point over Z_p; coefficients are reduced mod p
    (rational coefficients via modular inverse of the denominator)."""
    if p.ring.is_gf and p.ring.p != prime:
        raise PolyError(f"polynomial lives over GF({p.ring.p}), cannot evaluate mod {prime}")
    comp = _compiled(p)
    if not len(comp["nums"]):
        return 0
    coeffs = _coeffs_mod(comp, prime)
    acc = coeffs.copy()
    exps = comp["exps"]
    for i in comp["used"]:
        name = p.vars.names[i]
        if name not in point:
            raise PolyError(f"missing binding for {name!r}")
        v = point[name] % prime
        col = exps[:, i]
        maxdeg = int(col.max())
        table = np.empty(maxdeg + 1, dtype=np.int64)
        table[0] = 1
        acc_v = 1
        for e in range(1, maxdeg + 1):
            acc_v = acc_v * v % prime
            table[e] = acc_v
        acc = acc * table[col] % prime
    return int(acc.sum() % prime)


# -- expression DAG ----------------------------------------------------------


class Expr:
    """A node of an identity-expression DAG; evaluated bottom-up with
    memoization, never expanded symbolically unless expand() is called."""

    def eval_mod(self, point: Mapping[str, int], prime: int, memo: dict | None = None) -> int:
        raise NotImplementedError

    def degree_bound(self) -> int:
        raise NotImplementedError

    def expand(self, budget: int | None = None) -> Polynomial:
        raise NotImplementedError

    def leaf_vars(self) -> VariableSet:
        raise NotImplementedError


class Leaf(Expr):
    """A stored polynomial over the base variable set."""

    __slots__ = ("poly",)

    def __init__(self, poly: Polynomial):
        self.poly = poly

    def eval_mod(self, point, prime, memo=None):
        if memo is None:
            memo = {}
        key = id(self)
        if key not in memo:
            memo[key] = poly_eval_mod(self.poly, point, prime)
        return memo[key]

    def degree_bound(self):
        return self.poly.total_degree()

    def expand(self, budget=None):
        return self.poly

    def leaf_vars(self):
        return self.poly.vars


class PolyAt(Expr):
    """An outer polynomial over abstract variables, each bound to a
    sub-expression; the workhorse for relations among named generators."""

    __slots__ = ("outer", "bindings")

    def __init__(self, outer: Polynomial, bindings: Mapping[str, Expr]):
        for name in outer.vars.names:
            if outer.max_exponent(name) and name not in bindings:
                raise PolyError(f"unbound abstract variable {name!r}")
        self.outer = outer
        self.bindings = dict(bindings)

    def eval_mod(self, point, prime, memo=None):
        if memo is None:
            memo = {}
        key = id(self)
        if key in memo:
            return memo[key]
        inner = {
            name: expr.eval_mod(point, prime, memo)
            for name, expr in self.bindings.items()
        }
        value = poly_eval_mod(self.outer, inner, prime)
        memo[key] = value
        return value

    def degree_bound(self):
        bounds = {name: expr.degree_bound() for name, expr in self.bindings.items()}
        best = 0
        for exps, _ in self.outer.sorted_terms():
            d = sum(
                e * bounds.get(name, 0)
                for name, e in zip(self.outer.vars.names, exps)
            )
            if d > best:
                best = d
        return best

    def expand(self, budget=None):
        expanded = {
            name: expr.expand(budget) for name, expr in self.bindings.items()
        }
        return self.outer.substitute(expanded, budget=budget)

    def leaf_vars(self):
        for expr in self.bindings.values():
            return expr.leaf_vars()
        return self.outer.vars


def evaluate_mod(obj, point: Mapping[str, int], prime: int, allow_small_char: bool = False) -> int:
    """Evaluate a Polynomial or Expr at a fully bound point over Z_p."""
    check_prime(prime, allow_small_char=allow_small_char)
    if isinstance(obj, Polynomial):
        return poly_eval_mod(obj, point, prime)
    if isinstance(obj, Expr):
        return obj.eval_mod(point, prime, {})
    raise PolyError(f"cannot evaluate {type(obj).__name__}")
