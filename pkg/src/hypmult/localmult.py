"""Local multiplicities at points of projective hypersurfaces.

Two independent routes compute mu_P(V(f)):

* ``multiplicity_at``: move P to the origin of an affine chart and read off
  the lowest total degree of the local equation;
* ``multiplicity_via_derived``: smallest order alpha such that some Hasse
  derivative of order alpha is nonzero at P.

Lengths of 0-dimensional local rings are computed by linear algebra on
truncated ideals, which also gives plane-curve intersection multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb, prod
from typing import Sequence

from .gf import GF, FieldEmbedding, embed_build, extension
from .geom import ClosedPoint, ProjPoint
from .linalg import Echelon
from .mpoly import MPoly, DerivedSet, hasse_expand, monomials_up_to, compositions, translate


class NotOnVariety(ValueError):
    pass


class LengthNotStabilized(RuntimeError):
    pass


@dataclass(eq=False)
class HypersurfaceScheme:
    f: MPoly
    name: str = ""
    _derived: dict = dc_field(default_factory=dict, repr=False)
    _base_changes: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.f.is_zero() or not self.f.is_homogeneous():
            raise ValueError("a hypersurface needs a nonzero homogeneous polynomial")
        if self.f.degree < 1:
            raise ValueError("a hypersurface needs degree >= 1")

    @property
    def n(self) -> int:
        return self.f.nvars - 1

    @property
    def delta(self) -> int:
        return self.f.degree

    @property
    def field(self) -> GF:
        return self.f.field

    def derived(self, alpha: int) -> DerivedSet:
        if alpha not in self._derived:
            self._derived[alpha] = hasse_expand(self.f, alpha)
        return self._derived[alpha]

    def contains(self, P: ProjPoint) -> bool:
        return self.over(P.field).f.eval(P.coords) == 0

    def base_change(self, m: int) -> tuple["HypersurfaceScheme", FieldEmbedding]:
        big, emb = extension(self.field, m)
        return self.over(big), emb

    def over(self, big: GF) -> "HypersurfaceScheme":
        """This hypersurface with coefficients pushed into the extension ``big``."""
        if big == self.field:
            return self
        if big not in self._base_changes:
            emb = embed_build(self.field, big)
            self._base_changes[big] = HypersurfaceScheme(self.f.map_coeffs(emb), self.name)
        return self._base_changes[big]

    def __str__(self):
        return f"V({self.f})"


@dataclass(frozen=True)
class MultiplicityRecord:
    point: object  # ProjPoint or ClosedPoint
    mu: int
    method: str


def _as_point(P) -> ProjPoint:
    return P.representative if isinstance(P, ClosedPoint) else P


def multiplicity_at(X: HypersurfaceScheme, P, chart: int | None = None) -> MultiplicityRecord:
    """mu_P(X) as the order of the local equation at P."""
    Q = _as_point(P)
    Y = X.over(Q.field)
    if Y.f.eval(Q.coords) != 0:
        raise NotOnVariety(f"{Q!r} is not on {X}")
    g = translate(Y.f, Q.coords, chart if chart is not None else Q.chart())
    return MultiplicityRecord(P, g.lowest_degree(), "translation")


def multiplicity_via_derived(X: HypersurfaceScheme, P) -> MultiplicityRecord:
    """mu_P(X) as the least alpha with some order-alpha Hasse derivative nonzero at P."""
    Q = _as_point(P)
    Y = X.over(Q.field)
    if Y.f.eval(Q.coords) != 0:
        raise NotOnVariety(f"{Q!r} is not on {X}")
    for alpha in range(1, Y.delta + 1):
        D = Y.derived(alpha)
        if any(g.eval(Q.coords) for g in D.entries.values()):
            return MultiplicityRecord(P, alpha, "derived-order")
    raise ValueError(f"every Hasse derivative of order <= {Y.delta} vanishes at {Q!r}")


def hilbert_samuel(n: int, r: int, s: int) -> int:
    """Local Hilbert-Samuel function of a multiplicity-r hypersurface point in n-space."""
    if n < 1 or r < 1 or s < 0:
        raise ValueError("need n >= 1, r >= 1, s >= 0")

    def binom(a, b):
        return comb(a, b) if b >= 0 else 0

    return binom(n + s - 1, s) - binom(n + s - r - 1, s - r)


def hilbert_samuel_oracle(X: HypersurfaceScheme, P: ProjPoint, s: int) -> int:
    """Dimension of degree-s forms modulo the multiples of the initial form of
    the local equation, by explicit rank computation."""
    Y = X.over(P.field)
    if Y.f.eval(P.coords) != 0:
        raise NotOnVariety(f"{P!r} is not on {X}")
    g = translate(Y.f, P.coords, P.chart())
    init = g.lowest_form()
    r = init.degree
    n = g.nvars
    monos = list(compositions(n, s))
    if s < r:
        return len(monos)
    ech = Echelon(Y.field)
    for m in compositions(n, s - r):
        ech.add(init.mul_monomial(m).terms)
    return len(monos) - ech.rank


def _truncated_quotient_dim(gens: Sequence[MPoly], D: int, F: GF, nv: int) -> int:
    """dim k[x]/(I + m^D)."""
    ech = Echelon(F, key=lambda m: (sum(m), m))
    for g in gens:
        lo = g.lowest_degree()
        if lo >= D:
            continue
        low_terms = {m: c for m, c in g.terms.items() if sum(m) < D}
        for mono in monomials_up_to(nv, D - 1 - lo):
            dm = sum(mono)
            row = {}
            for m, c in low_terms.items():
                if sum(m) + dm < D:
                    row[tuple(a + b for a, b in zip(m, mono))] = c
            ech.add(row)
    return comb(nv + D - 1, nv) - ech.rank


def local_length_0dim(gens: Sequence[MPoly], degree_cap: int | None = None) -> int:
    """Length of k[x]_(x)/(gens) at the origin.

    dim k[x]/(I + m^D) is computed for D = 1, 2, ...; once two consecutive
    values agree, m^D lies in I locally (Nakayama) and the value is the length.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise LengthNotStabilized("zero ideal is not 0-dimensional")
    F, nv = gens[0].field, gens[0].nvars
    if degree_cap is None:
        degree_cap = prod(max(g.degree, 1) for g in gens) + 2
    prev = _truncated_quotient_dim(gens, 1, F, nv)
    for D in range(2, degree_cap + 1):
        cur = _truncated_quotient_dim(gens, D, F, nv)
        if cur == prev:
            return cur
        prev = cur
    raise LengthNotStabilized(
        f"no stabilization below degree {degree_cap}: point is not isolated or the cap is too small"
    )


def local_intersection_length(polys: Sequence[MPoly], P: ProjPoint, degree_cap: int | None = None) -> int:
    """Length of the local ring of V(polys) at the projective point P."""
    F = P.field
    lifted = []
    for f in polys:
        if f.field != F:
            f = f.map_coeffs(embed_build(f.field, F))
        lifted.append(translate(f, P.coords, P.chart()))
    if degree_cap is None:
        degree_cap = prod(f.degree for f in polys) + 2
    return local_length_0dim(lifted, degree_cap)


def plane_intersection_mult(F: MPoly, G: MPoly, P) -> int:
    """i(P; V(F).V(G); P^2) for plane curves without a common component through P."""
    if F.nvars != 3 or G.nvars != 3:
        raise ValueError("plane curves need 3 homogeneous variables")
    Q = _as_point(P)
    try:
        return local_intersection_length([F, G], Q)
    except LengthNotStabilized:
        raise ValueError(f"curves share a component through {Q!r}") from None


def generic_multiplicity(
    X: HypersurfaceScheme, Y: Sequence[MPoly], max_m: int = 3, budget: int = 10**6
) -> int:
    """mu_Y(X) for an integral subvariety Y, as the minimal multiplicity over
    points of Y(F_{q^m}), growing m until the minimum is stable for two steps."""
    from .geom import enum_proj

    best, history = None, []
    for m in range(1, max_m + 1):
        big = extension(X.field, m)[0] if m > 1 else X.field
        Yb = [g.map_coeffs(embed_build(g.field, big)) if g.field != big else g for g in Y]
        for P in enum_proj(X.n, big, budget):
            if all(g.eval(P.coords) == 0 for g in Yb):
                mu = multiplicity_at(X, P).mu
                best = mu if best is None else min(best, mu)
        history.append(best)
        if len(history) >= 2 and history[-1] == history[-2] and best is not None:
            return best
    if best is None:
        raise ValueError("no points found on Y")
    return best
