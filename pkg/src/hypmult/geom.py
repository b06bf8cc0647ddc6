"""Points of projective space over finite fields.

Points are stored as normalized integer coordinate tuples (leftmost nonzero
coordinate equal to 1), so equality and hashing are plain tuple operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .gf import GF, FieldElement, FieldEmbedding, embed_build
from .mpoly import MPoly, _Parser, PolyParseError

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ProjPoint:
    field: GF
    coords: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("all coordinates are zero")
        lead = next(c for c in self.coords if c)
        if lead != 1:
            inv = self.field.inv(lead)
            object.__setattr__(self, "coords", tuple(self.field.mul(c, inv) for c in self.coords))
        else:
            object.__setattr__(self, "coords", tuple(self.coords))

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.coords)

    def chart(self) -> int:
        """Index of the leftmost nonzero coordinate."""
        return next(i for i, c in enumerate(self.coords) if c)

    def valid_charts(self) -> list[int]:
        return [i for i, c in enumerate(self.coords) if c]

    def map(self, emb: FieldEmbedding) -> "ProjPoint":
        return ProjPoint(emb.target, tuple(emb(c) for c in self.coords))

    def frobenius(self, times: int = 1) -> "ProjPoint":
        F = self.field
        return ProjPoint(F, tuple(F.frobenius(c, times) for c in self.coords))

    def __str__(self):
        return ":".join(self.field.format(c) for c in self.coords)

    def __repr__(self):
        return f"[{self}]"


def parse_point(text: str, field: GF) -> ProjPoint:
    """Parse "a0:a1:...:an" (coefficients as in the polynomial grammar)."""
    coords = []
    offset = 0
    for part in text.split(":"):
        pr = _Parser(part, field, 0)
        try:
            c = pr.coeff()
            if pr.peek():
                raise PolyParseError(f"unexpected character {pr.peek()!r}", pr.i)
        except PolyParseError as e:
            raise PolyParseError(f"bad point coordinate {part!r}", offset + e.pos) from None
        coords.append(c)
        offset += len(part) + 1
    if len(coords) < 2:
        raise ValueError("a projective point needs at least two coordinates")
    return ProjPoint(field, tuple(coords))


def proj_count(n: int, q: int) -> int:
    """#P^n(F_q); zero for n < 0."""
    return sum(q**i for i in range(n + 1)) if n >= 0 else 0


def enum_proj(n: int, field: GF, budget: int = DEFAULT_BUDGET) -> Iterator[ProjPoint]:
    """All points of P^n(F_q), chart-major: first coordinate 1, then 0:1:..., etc."""
    q = field.q
    if q**n > budget:
        raise BudgetExceeded(f"q^n = {q**n} exceeds enumeration budget {budget}")
    return _enum_proj(n, field)


def _enum_proj(n, field):
    q = field.q
    for lead in range(n + 1):
        prefix = (0,) * lead + (1,)
        for rest in itertools.product(range(q), repeat=n - lead):
            # coordinates are already normalized; skip the constructor work
            pt = object.__new__(ProjPoint)
            object.__setattr__(pt, "field", field)
            object.__setattr__(pt, "coords", prefix + rest)
            yield pt


def gaussian_count(r: int, n: int, q: int) -> int:
    """Number of r-dimensional subspaces of F_q^n (product formula)."""
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")

    def qint(t):
        return (q**t - 1) // (q - 1)

    num = 1
    for t in range(1, n + 1):
        num *= qint(t)
    den = 1
    for t in range(1, r + 1):
        den *= qint(t)
    for t in range(1, n - r + 1):
        den *= qint(t)
    assert num % den == 0
    return num // den


def subspaces_bruteforce(r: int, n: int, q: int) -> int:
    """Count r-dim subspaces of F_q^n (q prime) by growing spans one vector at a time."""
    vectors = list(itertools.product(range(q), repeat=n))
    level = {frozenset([(0,) * n])}
    for _ in range(r):
        nxt = set()
        for sp in level:
            for v in vectors:
                if v not in sp:
                    nxt.add(frozenset(
                        tuple((a + c * b) % q for a, b in zip(s, v)) for s in sp for c in range(q)
                    ))
        level = nxt
    return len(level)


@dataclass(frozen=True)
class ClosedPoint:
    """A Frobenius orbit of points over F_{q^m}, relative to the base F_q."""

    orbit: frozenset
    degree: int
    base_field: GF
    residue_degree: int

    @property
    def representative(self) -> ProjPoint:
        return min(self.orbit, key=lambda P: P.coords)

    def __str__(self):
        return f"{{{self.representative}}}x{self.degree}"


def frobenius_orbit(P: ProjPoint, base: GF) -> ClosedPoint:
    F = P.field
    if F.p != base.p or F.k % base.k:
        raise ValueError(f"{F!r} is not an extension of {base!r}")
    orbit = [P]
    cur = P.frobenius(base.k)
    while cur != P:
        orbit.append(cur)
        cur = cur.frobenius(base.k)
    return ClosedPoint(frozenset(orbit), len(orbit), base, F.k // base.k)


def point_field_degree(P: ProjPoint, base: GF) -> int:
    """Degree over ``base`` of the smallest field containing P's coordinates."""
    return frobenius_orbit(P, base).degree


@dataclass
class DescentView:
    """Hypersurfaces over F_{q^m} together with the embedding F_q -> F_{q^m}."""

    polys: list[MPoly]
    embedding: FieldEmbedding

    def __post_init__(self):
        if isinstance(self.polys, MPoly):
            self.polys = [self.polys]
        for f in self.polys:
            if f.field != self.embedding.target:
                raise ValueError("variety must be defined over the embedding target")

    @property
    def n(self) -> int:
        return self.polys[0].nvars - 1

    def contains(self, P: ProjPoint) -> bool:
        """Is the F_q-point P (given over the base) in X_phi(F_q)?"""
        Q = P.map(self.embedding)
        return all(f.eval(Q.coords) == 0 for f in self.polys)


def rational_points_descent(view: DescentView, budget: int = DEFAULT_BUDGET) -> list[ProjPoint]:
    """Points of P^n(F_q), embedded in F_{q^m}, that lie on the variety."""
    emb = view.embedding
    out = []
    for P in enum_proj(view.n, emb.source, budget):
        Q = P.map(emb)
        if all(f.eval(Q.coords) == 0 for f in view.polys):
            out.append(Q)
    return out


def rational_points(polys: Sequence[MPoly] | MPoly, budget: int = DEFAULT_BUDGET) -> list[ProjPoint]:
    """X(F_q) for X cut out by homogeneous polynomials over F_q."""
    if isinstance(polys, MPoly):
        polys = [polys]
    F, n = polys[0].field, polys[0].nvars - 1
    return [P for P in enum_proj(n, F, budget) if all(f.eval(P.coords) == 0 for f in polys)]


def descent_view(polys, base: GF, big: GF) -> DescentView:
    return DescentView(list(polys), embed_build(base, big))
