"""Sparse multivariate polynomials over a finite field.

An :class:`MPoly` maps exponent tuples to nonzero encoded coefficients (see
:mod:`hypmult.gf`).  Variables are written ``T0, T1, ...``; affine polynomials
produced by :func:`translate` use the same names for the remaining
coordinates, renumbered from 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Iterable, Mapping, Sequence

from .gf import GF, FieldElement, FieldEmbedding
from .linalg import Echelon

Monomial = tuple[int, ...]


def grlex_key(m: Monomial):
    return (sum(m), m)


class MPoly:
    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: GF, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.field = field
        self.nvars = nvars
        self.terms: dict[Monomial, int] = {}
        self._hash = None
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has arity {len(m)}, expected {nvars}")
                if c:
                    self.terms[tuple(m)] = c

    @classmethod
    def _raw(cls, field: GF, nvars: int, terms: dict) -> "MPoly":
        # terms must already be clean (no zero coefficients)
        obj = cls.__new__(cls)
        obj.field, obj.nvars, obj.terms, obj._hash = field, nvars, terms, None
        return obj

    @classmethod
    def zero(cls, field: GF, nvars: int) -> "MPoly":
        return cls._raw(field, nvars, {})

    @classmethod
    def const(cls, field: GF, nvars: int, c: int) -> "MPoly":
        return cls._raw(field, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, field: GF, nvars: int, i: int) -> "MPoly":
        m = [0] * nvars
        m[i] = 1
        return cls._raw(field, nvars, {tuple(m): 1})

    @classmethod
    def monomial(cls, field: GF, nvars: int, m: Monomial, c: int = 1) -> "MPoly":
        return cls._raw(field, nvars, {tuple(m): c} if c else {})

    # --- basic properties ---
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def monomials(self) -> list[Monomial]:
        """Monomials in descending graded-lex order."""
        return sorted(self.terms, key=grlex_key, reverse=True)

    def coeff(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def lowest_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no lowest degree")
        return min(sum(m) for m in self.terms)

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly._raw(self.field, self.nvars, {m: c for m, c in self.terms.items() if sum(m) == d})

    def lowest_form(self) -> "MPoly":
        return self.homogeneous_part(self.lowest_degree())

    def variables_used(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # --- equality / hashing ---
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int):
            c = self.field.from_int(other)
            return self.terms == ({(0,) * self.nvars: c} if c else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    # --- arithmetic ---
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.field != self.field or other.nvars != self.nvars:
                raise ValueError("polynomials over different rings")
            return other
        if isinstance(other, FieldElement):
            return MPoly.const(self.field, self.nvars, other.value)
        if isinstance(other, int):
            return MPoly.const(self.field, self.nvars, self.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.field
        out = dict(self.terms)
        for m, c in o.terms.items():
            v = F.add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MPoly._raw(F, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MPoly._raw(F, self.nvars, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "MPoly":
        F = self.field
        if c == 0:
            return MPoly.zero(F, self.nvars)
        return MPoly._raw(F, self.nvars, {m: F.mul(v, c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        if isinstance(other, FieldElement):
            return self.scale(other.value)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.field
        out: dict = {}
        prime = F.k == 1
        p = F.p
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if prime:
                    out[m] = (out.get(m, 0) + c1 * c2) % p
                else:
                    out[m] = F.add(out.get(m, 0), F.mul(c1, c2))
        return MPoly._raw(F, self.nvars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MPoly":
        if e < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.field, self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, m: Monomial, c: int = 1) -> "MPoly":
        F = self.field
        return MPoly._raw(
            F, self.nvars, {tuple(a + b for a, b in zip(mm, m)): F.mul(v, c) for mm, v in self.terms.items()}
        )

    # --- calculus ---
    def partial(self, i: int) -> "MPoly":
        """Ordinary partial derivative with respect to T_i."""
        F = self.field
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e % F.p:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = F.mul(c, F.from_int(e))
        return MPoly._raw(F, self.nvars, out)

    def gradient(self) -> list["MPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    # --- evaluation / substitution ---
    def eval(self, point: Sequence[int]) -> int:
        """Value at a point given by encoded coordinates."""
        F = self.field
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        # cache powers per variable
        pw = [dict() for _ in range(self.nvars)]
        total = 0
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    cache = pw[i]
                    x = cache.get(e)
                    if x is None:
                        x = cache[e] = F.pow(point[i], e)
                    v = F.mul(v, x)
                    if not v:
                        break
            total = F.add(total, v)
        return total

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        vals = [p.value if isinstance(p, FieldElement) else int(p) for p in point]
        return FieldElement(self.field, self.eval(vals))

    def compose(self, subs: Sequence["MPoly"]) -> "MPoly":
        """Substitute ``subs[i]`` for T_i (all subs share one ring)."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitution per variable")
        if not subs:
            return self
        ring_field, ring_n = subs[0].field, subs[0].nvars
        powers: list[dict[int, MPoly]] = [{} for _ in subs]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = subs[i] ** e if e < 2 or e - 1 not in cache else cache[e - 1] * subs[i]
            return cache[e]

        acc: dict = {}
        F = ring_field
        for m, c in sorted(self.terms.items()):
            t = MPoly.const(F, ring_n, c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            for mm, v in t.terms.items():
                nv = F.add(acc.get(mm, 0), v)
                if nv:
                    acc[mm] = nv
                else:
                    acc.pop(mm, None)
        return MPoly._raw(F, ring_n, acc)

    def map_coeffs(self, emb: FieldEmbedding) -> "MPoly":
        """Image of this polynomial under a field embedding."""
        if emb.source != self.field:
            raise ValueError("embedding source does not match the coefficient field")
        return MPoly._raw(emb.target, self.nvars, {m: emb(c) for m, c in self.terms.items()})

    def drop_variable(self, i: int) -> "MPoly":
        """Remove T_i, which must not occur."""
        if any(m[i] for m in self.terms):
            raise ValueError(f"T{i} occurs in the polynomial")
        return MPoly._raw(self.field, self.nvars - 1, {m[:i] + m[i + 1:]: c for m, c in self.terms.items()})

    def insert_variable(self, i: int) -> "MPoly":
        return MPoly._raw(self.field, self.nvars + 1, {m[:i] + (0,) + m[i:]: c for m, c in self.terms.items()})

    def monic(self, key=grlex_key) -> "MPoly":
        if not self.terms:
            return self
        lead = max(self.terms, key=key)
        return self.scale(self.field.inv(self.terms[lead]))

    # --- display ---
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({format_poly(self)!r} over {self.field!r}, nvars={self.nvars})"


def format_poly(f: MPoly, names: Sequence[str] | None = None) -> str:
    F = f.field
    if not f.terms:
        return "0"
    names = names or [f"T{i}" for i in range(f.nvars)]
    parts = []
    for m in f.monomials():
        c = f.terms[m]
        factors = [names[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
        cs = F.format(c)
        if factors:
            parts.append("*".join(factors) if c == 1 else cs + "*" + "*".join(factors))
        else:
            parts.append(cs)
    return " + ".join(parts)


# --------------------------------------------------------------------------
# parsing

class PolyParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class _Parser:
    def __init__(self, text: str, field: GF, nvars: int):
        self.s = text
        self.i = 0
        self.F = field
        self.n = nvars

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def digits(self) -> int:
        self.ws()
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if j == self.i:
            raise PolyParseError("expected digits", self.i)
        return int(self.s[j:self.i])

    def coeff(self) -> int:
        F = self.F
        if self.peek() == "[":
            start = self.i
            self.i += 1
            cs = [self.digits()]
            while self.peek() == ",":
                self.i += 1
                cs.append(self.digits())
            if self.peek() != "]":
                raise PolyParseError("expected ']'", self.i)
            self.i += 1
            if len(cs) > F.k:
                raise PolyParseError(f"coefficient vector longer than extension degree {F.k}", start)
            return F.from_coeffs(cs)
        return F.from_int(self.digits())

    def factor(self) -> Monomial:
        if self.peek() != "T":
            raise PolyParseError("expected variable 'T<i>'", self.i)
        pos = self.i
        self.i += 1
        if self.i >= len(self.s) or not self.s[self.i].isdigit():
            raise PolyParseError("expected variable index", self.i)
        idx = self.digits()
        if idx >= self.n:
            raise PolyParseError(f"variable T{idx} out of range for arity {self.n}", pos)
        e = 1
        if self.peek() == "^":
            self.i += 1
            e = self.digits()
        m = [0] * self.n
        m[idx] = e
        return tuple(m)

    def term(self) -> tuple[Monomial, int]:
        F = self.F
        c = 1
        mono = [0] * self.n
        ch = self.peek()
        if ch.isdigit() or ch == "[":
            c = self.coeff()
            if self.peek() == "*":
                self.i += 1
            elif self.peek() != "T":
                return tuple(mono), c
        while True:
            m = self.factor()
            mono = [a + b for a, b in zip(mono, m)]
            if self.peek() == "*":
                self.i += 1
                continue
            break
        return tuple(mono), c

    def poly(self) -> MPoly:
        F = self.F
        out: dict = {}
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.i += 1
        while True:
            m, c = self.term()
            if sign < 0:
                c = F.neg(c)
            out[m] = F.add(out.get(m, 0), c)
            ch = self.peek()
            if ch in ("+", "-") and ch:
                sign = -1 if ch == "-" else 1
                self.i += 1
                continue
            if ch:
                raise PolyParseError(f"unexpected character {ch!r}", self.i)
            break
        return MPoly(F, self.n, out)


def poly_parse(text: str, field: GF, arity: int) -> MPoly:
    """Parse a polynomial string (see README for the grammar)."""
    return _Parser(text, field, arity).poly()


# --------------------------------------------------------------------------
# Hasse expansion

def compositions(n: int, total: int) -> Iterable[Monomial]:
    """All exponent vectors of length n with the given sum (lexicographic)."""
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(n - 1, total - first):
            yield (first,) + rest


def hasse_coefficient(f: MPoly, index: Monomial) -> MPoly:
    """Coefficient of S^index in f(T + S)."""
    F = f.field
    p = F.p
    out = {}
    for m, c in f.terms.items():
        b = 1
        for e, i in zip(m, index):
            if i > e:
                b = 0
                break
            b = b * comb(e, i) % p
        if b:
            mm = tuple(e - i for e, i in zip(m, index))
            v = F.mul(c, F.from_int(b))
            out[mm] = F.add(out.get(mm, 0), v)
    return MPoly(F, f.nvars, out)


@dataclass
class DerivedSet:
    """The order-``order`` Hasse derivatives g^I of a form, with a basis of their span."""

    order: int
    entries: dict[Monomial, MPoly]
    zero_indices: frozenset
    basis: list[MPoly] = dc_field(default_factory=list)

    def get(self, index: Monomial) -> MPoly:
        """g^index, returning the zero polynomial for omitted (vanishing) indices."""
        index = tuple(index)
        if index in self.entries:
            return self.entries[index]
        if index in self.zero_indices:
            return next(iter(self.entries.values())).scale(0) if self.entries else None
        raise KeyError(index)

    def is_zero(self, index: Monomial) -> bool:
        return tuple(index) in self.zero_indices

    def __len__(self):
        return len(self.entries) + len(self.zero_indices)


def span_basis(polys: Iterable[MPoly]) -> list[MPoly]:
    """Deterministic row-reduced basis of the span of ``polys``."""
    polys = list(polys)
    if not polys:
        return []
    F, n = polys[0].field, polys[0].nvars
    ech = Echelon(F, key=lambda m: (-sum(m),) + tuple(-x for x in m))
    for g in polys:
        ech.add(dict(g.terms))
    return [MPoly(F, n, row) for row in ech.rows()]


def hasse_expand(f: MPoly, alpha: int) -> DerivedSet:
    """All g^I with |I| = alpha for a nonzero homogeneous f."""
    if f.is_zero() or not f.is_homogeneous():
        raise ValueError("hasse_expand needs a nonzero homogeneous polynomial")
    delta = f.degree
    if not 1 <= alpha <= delta:
        raise ValueError(f"order must lie in 1..{delta}, got {alpha}")
    entries, zeros = {}, set()
    for index in compositions(f.nvars, alpha):
        g = hasse_coefficient(f, index)
        if g.is_zero():
            zeros.add(index)
        else:
            entries[index] = g
    return DerivedSet(alpha, entries, frozenset(zeros), span_basis(entries.values()))


# --------------------------------------------------------------------------
# affine charts

def _coords(point) -> tuple[int, ...]:
    coords = getattr(point, "coords", point)
    return tuple(c.value if isinstance(c, FieldElement) else int(c) for c in coords)


def shift(g: MPoly, a: Sequence[int]) -> MPoly:
    """g(x + a) for an affine polynomial g."""
    F, n = g.field, g.nvars
    subs = [MPoly(F, n, {tuple(int(i == j) for j in range(n)): 1, (0,) * n: a[i]}) for i in range(n)]
    return g.compose(subs)


def dehomogenize(f: MPoly, chart: int) -> MPoly:
    """f with T_chart = 1, as a polynomial in the remaining variables."""
    F, n = f.field, f.nvars
    out: dict = {}
    for m, c in f.terms.items():
        mm = m[:chart] + m[chart + 1:]
        out[mm] = F.add(out.get(mm, 0), c)
    return MPoly(F, n - 1, out)


def translate(f: MPoly, point, chart: int | None = None) -> MPoly:
    """Local equation of V(f) at ``point``: dehomogenize at ``chart`` and move
    the point to the origin.  The result has one variable per non-chart
    coordinate, in order."""
    F = f.field
    a = _coords(point)
    if len(a) != f.nvars:
        raise ValueError("arity mismatch between point and polynomial")
    if chart is None:
        chart = next(i for i, x in enumerate(a) if x)
    if a[chart] == 0:
        raise ValueError(f"coordinate {chart} of the point is zero; not a valid chart")
    inv = F.inv(a[chart])
    aff = [F.mul(x, inv) for i, x in enumerate(a) if i != chart]
    n = f.nvars - 1
    subs = []
    j = 0
    for i in range(f.nvars):
        if i == chart:
            subs.append(MPoly.const(F, n, 1))
        else:
            e = [0] * n
            e[j] = 1
            subs.append(MPoly(F, n, {tuple(e): 1, (0,) * n: aff[j]}))
            j += 1
    return f.compose(subs)


def eval_proj(f: MPoly, point) -> FieldElement:
    a = _coords(point)
    if len(a) != f.nvars:
        raise ValueError(f"arity mismatch: point has {len(a)} coordinates, polynomial {f.nvars} variables")
    return FieldElement(f.field, f.eval(a))


def lowest_degree(g: MPoly) -> int:
    return g.lowest_degree()


def homogeneous_monomials(nvars: int, degree: int) -> list[Monomial]:
    return list(compositions(nvars, degree))


def monomials_up_to(nvars: int, degree: int) -> list[Monomial]:
    return [m for d in range(degree + 1) for m in compositions(nvars, d)]


def random_form(field: GF, nvars: int, degree: int, rng, density: float = 1.0) -> MPoly:
    """Homogeneous polynomial with uniformly random coefficients (each monomial
    kept with probability ``density``)."""
    terms = {}
    for m in compositions(nvars, degree):
        if density < 1.0 and rng.random() >= density:
            continue
        terms[m] = rng.randrange(field.q)
    return MPoly(field, nvars, terms)


def product(polys: Iterable[MPoly]) -> MPoly:
    polys = list(polys)
    out = polys[0]
    for g in polys[1:]:
        out = out * g
    return out


def cartesian_points(field: GF, n: int):
    return itertools.product(range(field.q), repeat=n)
