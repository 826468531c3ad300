"""Exact sparse multivariate polynomial arithmetic.

Coefficients are Python ints (ring ZZ), fractions.Fraction (ring QQ), or
residues in [0, p) for an odd prime p < 2**31 (ring GF(p)).  A monomial is an
exponent vector over a fixed, ordered variable set; internally it is packed
into a single integer at 8 bits per variable.  Packed keys compare
lexicographically exactly like the exponent vectors they encode, so the
canonical graded-lex term order reduces to integer comparisons, and monomial
multiplication is a single big-int addition.  Per-variable exponents are
bounded by 255; every object built in this project has total degree <= 54, and
products guard the bound through a conservative per-polynomial exponent cap.

Polynomials are immutable after construction and every operation is pure, so
values can be shared freely across threads and forked worker processes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Coeff = Union[int, Fraction]

_FIELD_BITS = 8
_FIELD_MASK = 0xFF
_MAX_EXP = 0xFF


class PolyError(Exception):
    """Base class for errors raised by the polynomial layer."""


class RingMismatch(PolyError):
    pass


class VariableMismatch(PolyError):
    pass


class BudgetExceeded(PolyError):
    """An exact expansion grew past the configured term budget."""


def _is_prime_u32(n: int) -> bool:
    # deterministic Miller-Rabin; bases {2,3,5,7} suffice below 3215031751
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Ring:
    """Coefficient ring tag: ZZ, QQ, or GF(p) for an odd prime p < 2**31."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int = 0):
        self.kind = kind
        self.p = p

    @property
    def is_gf(self) -> bool:
        return self.kind == "GF"

    def normalize(self, c) -> Coeff:
        """Coerce a scalar into this ring, or raise RingMismatch."""
        if self.kind == "ZZ":
            if isinstance(c, int):
                return c
            if isinstance(c, Fraction):
                if c.denominator == 1:
                    return c.numerator
                raise RingMismatch(f"non-integer coefficient {c} in ZZ")
            raise RingMismatch(f"bad coefficient {c!r} for ZZ")
        if self.kind == "QQ":
            if isinstance(c, (int, Fraction)):
                return Fraction(c)
            raise RingMismatch(f"bad coefficient {c!r} for QQ")
        if isinstance(c, int):
            return c % self.p
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise RingMismatch(f"denominator of {c} not invertible mod {self.p}")
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        raise RingMismatch(f"bad coefficient {c!r} for GF({self.p})")

    def __eq__(self, other):
        return isinstance(other, Ring) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.is_gf else self.kind


ZZ = Ring("ZZ")
QQ = Ring("QQ")

_GF_CACHE: dict = {}


def GF(p: int) -> Ring:
    """The prime field Z_p; p must be an odd prime below 2**31."""
    r = _GF_CACHE.get(p)
    if r is None:
        if p == 2 or p >= 2**31 or not _is_prime_u32(p):
            raise PolyError(f"GF requires an odd prime < 2**31, got {p}")
        r = _GF_CACHE[p] = Ring("GF", p)
    return r


def unify_rings(a: Ring, b: Ring) -> Ring:
    """The smallest ring both coefficient sets coerce into."""
    if a == b:
        return a
    kinds = {a.kind, b.kind}
    if kinds == {"ZZ", "QQ"}:
        return QQ
    if "GF" in kinds and kinds != {"GF"}:
        return a if a.is_gf else b
    raise RingMismatch(f"cannot mix {a} and {b}")


class VariableSet:
    """An ordered set of distinct variable names; the order fixes the monomial order."""

    __slots__ = ("names", "_index", "_shifts")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise VariableMismatch("duplicate variable names")
        if not all(isinstance(n, str) and n for n in names):
            raise VariableMismatch("variable names must be non-empty strings")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        n = len(names)
        self._shifts = tuple((n - 1 - i) * _FIELD_BITS for i in range(n))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise VariableMismatch(f"unknown variable {name!r}") from None

    def shift(self, name: str) -> int:
        return self._shifts[self.index(name)]

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != len(self.names):
            raise VariableMismatch(
                f"exponent vector of length {len(exps)}, expected {len(self.names)}"
            )
        key = 0
        for e, sh in zip(exps, self._shifts):
            if not 0 <= e <= _MAX_EXP:
                raise PolyError(f"exponent {e} outside [0, {_MAX_EXP}]")
            key |= e << sh
        return key

    def unpack(self, key: int) -> tuple:
        return tuple((key >> sh) & _FIELD_MASK for sh in self._shifts)

    def extend(self, extra: Iterable[str]) -> "VariableSet":
        return VariableSet(self.names + tuple(extra))

    def __contains__(self, name) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VariableSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableSet({list(self.names)!r})"


def _max_field(key: int) -> int:
    m = 0
    while key:
        f = key & _FIELD_MASK
        if f > m:
            m = f
        key >>= _FIELD_BITS
    return m


class Polynomial:
    """A canonical sparse polynomial: packed monomial -> nonzero coefficient.

    `maxexp` is a conservative upper bound on any single exponent appearing in
    the polynomial; multiplication uses it to guard the packed representation.
    """

    __slots__ = ("ring", "vars", "terms", "maxexp", "_cache")

    def __init__(self, ring: Ring, vars: VariableSet, terms: dict, maxexp: int | None = None):
        self.ring = ring
        self.vars = vars
        self.terms = terms
        if maxexp is None:
            maxexp = max((_max_field(k) for k in terms), default=0)
        self.maxexp = maxexp
        self._cache: dict = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, ring: Ring, vars: VariableSet) -> "Polynomial":
        return cls(ring, vars, {}, 0)

    @classmethod
    def constant(cls, ring: Ring, vars: VariableSet, c) -> "Polynomial":
        c = ring.normalize(c)
        return cls(ring, vars, {0: c} if c else {}, 0)

    @classmethod
    def variable(cls, ring: Ring, vars: VariableSet, name: str) -> "Polynomial":
        return cls(ring, vars, {1 << vars.shift(name): ring.normalize(1)}, 1)

    @classmethod
    def from_terms(cls, ring: Ring, vars: VariableSet, terms: Mapping) -> "Polynomial":
        """Build from {exponent tuple -> coefficient}."""
        acc: dict = {}
        for mono, c in terms.items():
            key = vars.pack(mono)
            c = ring.normalize(c)
            c0 = acc.get(key)
            c = c if c0 is None else ring.normalize(c0 + c)
            if c:
                acc[key] = c
            else:
                acc.pop(key, None)
        return cls(ring, vars, acc)

    @classmethod
    def monomial(cls, ring: Ring, vars: VariableSet, exps: Mapping[str, int], c=1) -> "Polynomial":
        """A single term from a {name: exponent} map."""
        vec = [0] * len(vars)
        for name, e in exps.items():
            vec[vars.index(name)] += e
        c = ring.normalize(c)
        if not c:
            return cls.zero(ring, vars)
        return cls(ring, vars, {vars.pack(vec): c})

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = Polynomial.constant(self.ring, self.vars, other)
            except RingMismatch:
                return False
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def sorted_terms(self) -> list:
        """Terms as (exponent tuple, coefficient), graded-lex descending."""
        unpack = self.vars.unpack
        items = [(sum(t := unpack(k)), t, k) for k in self.terms]
        items.sort(key=lambda x: (x[0], x[2]), reverse=True)
        return [(t, self.terms[k]) for _, t, k in items]

    def total_degree(self) -> int:
        unpack = self.vars.unpack
        return max((sum(unpack(k)) for k in self.terms), default=0)

    def degree_in(self, names: Iterable[str]) -> int:
        shifts = [self.vars.shift(n) for n in names]
        best = 0
        for k in self.terms:
            d = sum((k >> sh) & _FIELD_MASK for sh in shifts)
            if d > best:
                best = d
        return best

    def multidegree(self, groups: Sequence[Iterable[str]]):
        """Per-group degree vector; None if terms are not multihomogeneous."""
        shift_groups = [[self.vars.shift(n) for n in g] for g in groups]
        result = None
        for k in self.terms:
            vec = tuple(
                sum((k >> sh) & _FIELD_MASK for sh in shs) for shs in shift_groups
            )
            if result is None:
                result = vec
            elif result != vec:
                return None
        return result

    def max_exponent(self, name: str) -> int:
        sh = self.vars.shift(name)
        return max(((k >> sh) & _FIELD_MASK for k in self.terms), default=0)

    def coefficient(self, exps: Mapping[str, int] | Sequence[int]) -> Coeff:
        """Coefficient of one full monomial (zero if absent)."""
        if isinstance(exps, Mapping):
            vec = [0] * len(self.vars)
            for name, e in exps.items():
                vec[self.vars.index(name)] = e
            key = self.vars.pack(vec)
        else:
            key = self.vars.pack(exps)
        return self.terms.get(key, 0)

    # -- ring operations ---------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.vars != other.vars:
            raise VariableMismatch("operands live over different variable sets")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, self.vars, other)
        self._check_compatible(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        is_gf = self.ring.is_gf
        p = self.ring.p
        out = dict(a)
        for k, c in b.items():
            c0 = out.get(k)
            if c0 is None:
                out[k] = c
                continue
            c0 = c0 + c
            if is_gf:
                c0 %= p
            if c0:
                out[k] = c0
            else:
                del out[k]
        return Polynomial(self.ring, self.vars, out, max(self.maxexp, other.maxexp))

    __radd__ = __add__

    def __neg__(self):
        if self.ring.is_gf:
            p = self.ring.p
            return Polynomial(self.ring, self.vars, {k: (p - c) % p for k, c in self.terms.items()}, self.maxexp)
        return Polynomial(self.ring, self.vars, {k: -c for k, c in self.terms.items()}, self.maxexp)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.ring.normalize(other)
            if not c:
                return Polynomial.zero(self.ring, self.vars)
            if self.ring.is_gf:
                p = self.ring.p
                return Polynomial(self.ring, self.vars, {k: v * c % p for k, v in self.terms.items()}, self.maxexp)
            return Polynomial(self.ring, self.vars, {k: v * c for k, v in self.terms.items()}, self.maxexp)
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "Polynomial", budget: int | None = None) -> "Polynomial":
        """Product; `budget` caps the intermediate term count."""
        self._check_compatible(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.ring, self.vars)
        if self.maxexp + other.maxexp > _MAX_EXP:
            raise PolyError("product exceeds the per-variable exponent bound 255")
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                c0 = get(k)
                out[k] = c1 * c2 if c0 is None else c0 + c1 * c2
            if budget is not None and len(out) > budget:
                raise BudgetExceeded(f"product grew past {budget} terms")
        if self.ring.is_gf:
            p = self.ring.p
            out = {k: c for k, c in ((k, c % p) for k, c in out.items()) if c}
        else:
            out = {k: c for k, c in out.items() if c}
        return Polynomial(self.ring, self.vars, out, self.maxexp + other.maxexp)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("polynomial powers must be non-negative integers")
        result = Polynomial.constant(self.ring, self.vars, 1)
        for _ in range(n):
            result = result.mul(self)
        return result

    # -- ring / variable-set conversion -------------------------------------

    def to_ring(self, ring: Ring) -> "Polynomial":
        if ring == self.ring:
            return self
        out: dict = {}
        for k, c in self.terms.items():
            c = ring.normalize(Fraction(c) if isinstance(c, int) else c)
            if c:
                out[k] = c
        return Polynomial(ring, self.vars, out, self.maxexp)

    def convert(self, new_vars: VariableSet) -> "Polynomial":
        """Re-express over another variable set, matching variables by name."""
        if new_vars == self.vars:
            return self
        old = self.vars
        moves = []
        for i, name in enumerate(old.names):
            sh_old = old._shifts[i]
            if name in new_vars:
                moves.append((sh_old, new_vars.shift(name)))
            else:
                moves.append((sh_old, None))
        out: dict = {}
        for k, c in self.terms.items():
            nk = 0
            for sh_old, sh_new in moves:
                e = (k >> sh_old) & _FIELD_MASK
                if not e:
                    continue
                if sh_new is None:
                    name = old.names[old._shifts.index(sh_old)]
                    raise VariableMismatch(
                        f"variable {name!r} used but absent from target set"
                    )
                nk |= e << sh_new
            out[nk] = c
        if len(out) != len(self.terms):
            raise PolyError("variable conversion collapsed distinct monomials")
        return Polynomial(self.ring, new_vars, out, self.maxexp)

    # -- extraction, substitution, evaluation --------------------------------

    def coefficient_of(self, exps: Mapping[str, int], subset: Iterable[str]) -> "Polynomial":
        """The polynomial in the remaining variables multiplying exactly the
        monomial `exps` of the designated `subset` variables.

        Extracting with an all-zero exponent map returns the part of the
        polynomial free of the subset variables.
        """
        subset = tuple(subset)
        sub_idx = {self.vars.index(n) for n in subset}
        for name in exps:
            if name not in subset:
                raise VariableMismatch(f"{name!r} is not in the designated subset")
        mask = 0
        for n in subset:
            mask |= _FIELD_MASK << self.vars.shift(n)
        required = 0
        for name, e in exps.items():
            if not 0 <= e <= _MAX_EXP:
                raise PolyError(f"exponent {e} outside [0, {_MAX_EXP}]")
            required |= e << self.vars.shift(name)
        inv = ~mask
        out = {k & inv: c for k, c in self.terms.items() if k & mask == required}
        return Polynomial(self.ring, self.vars, out, self.maxexp)

    def substitute(self, bindings: Mapping[str, object], budget: int | None = None) -> "Polynomial":
        """Exact simultaneous substitution of variables by polynomials or scalars.

        Unbound variables pass through by name into the target variable set
        (the binding polynomials' set, or this polynomial's set if every
        binding is a scalar).
        """
        poly_bindings = {}
        scalar_bindings = {}
        for name, v in bindings.items():
            self.vars.index(name)
            if isinstance(v, Polynomial):
                poly_bindings[name] = v
            else:
                scalar_bindings[name] = v
        ring = self.ring
        target = self.vars
        for v in poly_bindings.values():
            ring = unify_rings(ring, v.ring)
            target = v.vars
        for v in poly_bindings.values():
            if v.vars != target:
                raise VariableMismatch("binding polynomials use different variable sets")
        for c in scalar_bindings.values():
            if isinstance(c, Fraction) and c.denominator != 1 and ring.kind == "ZZ":
                ring = QQ
        scalar_bindings = {n: ring.normalize(c) for n, c in scalar_bindings.items()}
        poly_bindings = {n: v.to_ring(ring) for n, v in poly_bindings.items()}

        bound_shifts = {n: self.vars.shift(n) for n in bindings}
        passthrough = []  # (old shift, new shift) for unbound variables
        for i, name in enumerate(self.vars.names):
            if name in bindings:
                continue
            sh_old = self.vars._shifts[i]
            if any((k >> sh_old) & _FIELD_MASK for k in self.terms):
                passthrough.append((sh_old, target.shift(name)))

        one = Polynomial.constant(ring, target, 1)
        powers: dict = {n: [one, p] for n, p in poly_bindings.items()}

        def power(name: str, e: int) -> Polynomial:
            lst = powers[name]
            while len(lst) <= e:
                lst.append(lst[-1].mul(lst[1], budget=budget))
            return lst[e]

        out: dict = {}
        maxexp_out = 0
        is_gf = ring.is_gf
        p_mod = ring.p
        for k, c in self.terms.items():
            if isinstance(c, int) and ring.kind == "QQ":
                c = Fraction(c)
            elif is_gf:
                c = ring.normalize(c)
            residual = 0
            res_max = 0
            for sh_old, sh_new in passthrough:
                e = (k >> sh_old) & _FIELD_MASK
                if e:
                    residual |= e << sh_new
                    if e > res_max:
                        res_max = e
            factor = None
            for name, sh in bound_shifts.items():
                e = (k >> sh) & _FIELD_MASK
                if not e:
                    continue
                if name in scalar_bindings:
                    c = c * scalar_bindings[name] ** e
                    if is_gf:
                        c %= p_mod
                else:
                    q = power(name, e)
                    factor = q if factor is None else factor.mul(q, budget=budget)
            if is_gf:
                c %= p_mod
            if not c:
                continue
            if factor is None:
                c0 = out.get(residual)
                c0 = c if c0 is None else c0 + c
                if (c0 % p_mod if is_gf else c0):
                    out[residual] = c0 % p_mod if is_gf else c0
                else:
                    out.pop(residual, None)
                if res_max > maxexp_out:
                    maxexp_out = res_max
            else:
                if res_max + factor.maxexp > _MAX_EXP:
                    raise PolyError("substitution exceeds the exponent bound 255")
                if res_max + factor.maxexp > maxexp_out:
                    maxexp_out = res_max + factor.maxexp
                get = out.get
                for k2, c2 in factor.terms.items():
                    kk = k2 + residual
                    cc = c * c2
                    c0 = get(kk)
                    cc = cc if c0 is None else c0 + cc
                    if is_gf:
                        cc %= p_mod
                    if cc:
                        out[kk] = cc
                    else:
                        out.pop(kk, None)
            if budget is not None and len(out) > budget:
                raise BudgetExceeded(f"substitution grew past {budget} terms")
        return Polynomial(ring, target, out, maxexp_out)

    def evaluate(self, point: Mapping[str, Coeff]) -> Coeff:
        """Exact value at a fully specified point (ints or Fractions)."""
        vals = []
        for name in self.vars.names:
            if name not in point:
                raise PolyError(f"missing binding for {name!r}")
            vals.append(point[name])
        shifts = self.vars._shifts
        total = 0
        for k, c in self.terms.items():
            v = c
            kk = k
            i = len(shifts) - 1
            while kk:
                e = kk & _FIELD_MASK
                if e:
                    v = v * vals[i] ** e
                kk >>= _FIELD_BITS
                i -= 1
            total = total + v
        if self.ring.is_gf:
            total %= self.ring.p
        return total

    # -- rendering -----------------------------------------------------------

    def text(self) -> str:
        """Canonical text form: graded-lex descending, '^1' and unit
        coefficients omitted, rationals as num/den in lowest terms."""
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            neg = c < 0
            mag = -c if neg else c
            factors = []
            if mag != 1:
                factors.append(str(mag))
            for name, e in zip(self.vars.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors) if factors else "1"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.text()

    def __repr__(self):
        if len(self.terms) <= 6:
            return f"Polynomial({self.ring}, {self.text()})"
        return f"Polynomial({self.ring}, {len(self.terms)} terms, degree {self.total_degree()})"
