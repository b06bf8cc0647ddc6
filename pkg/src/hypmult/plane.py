"""Closed points of 0-dimensional subschemes of P^2 over F_q and the
Bezout check for pairs of plane curves.

Points in the chart z = 1 are found from the univariate eliminants of the
affine ideal (minimal polynomials of x and y acting on the quotient): for each residue degree d that the eliminants allow, the
x-roots are computed in F_{q^d} and for each of them the common y-roots of
all generators.  The line at infinity is treated directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from . import upoly
from .gf import GF, MAX_ORDER, embed_build, field_create
from .geom import ClosedPoint, ProjPoint, frobenius_orbit
from .ideals import GREVLEX, buchberger
from .linalg import nullspace
from .localmult import HypersurfaceScheme, multiplicity_at, plane_intersection_mult
from .mpoly import MPoly, dehomogenize


class NotZeroDimensional(ValueError):
    pass


class FieldCapExceeded(ValueError):
    """A closed point needs a residue field larger than the table cap."""


def _univariate(f: MPoly, var: int) -> list[int]:
    """Coefficient list of an MPoly that only involves variable ``var``."""
    out = [0] * (f.degree + 1)
    for m, c in f.terms.items():
        if any(e for i, e in enumerate(m) if i != var):
            raise ValueError("polynomial is not univariate")
        out[m[var]] = c
    return upoly.trim(out)


def _specialize(f: MPoly, values: dict[int, int], free: int) -> list[int]:
    """f with the variables in ``values`` substituted, as a polynomial in T_free."""
    F = f.field
    out: dict[int, int] = {}
    for m, c in f.terms.items():
        v = c
        for i, x in values.items():
            if m[i]:
                v = F.mul(v, F.pow(x, m[i]))
        if v:
            out[m[free]] = F.add(out.get(m[free], 0), v)
    size = max(out, default=-1) + 1
    return upoly.trim([out.get(i, 0) for i in range(size)])


def _affine_quotient(affine: list[MPoly]):
    """Grevlex basis of a 2-variable affine ideal and dim k[x, y]/I (None if infinite)."""
    gb = buchberger(affine, GREVLEX)
    if gb.is_unit_ideal():
        return gb, 0
    leads = gb.leading_monomials()
    ys = [m[1] for m in leads if m[0] == 0]
    if not ys or not any(m[1] == 0 for m in leads):
        return gb, None
    count = 0
    for b in range(min(ys)):
        # standard monomials x^a y^b stop at the first leading monomial with y-degree <= b
        count += min(m[0] for m in leads if m[1] <= b)
    return gb, count


def _eliminant(gb, var: int, length: int) -> list[int]:
    """Generator of I ∩ k[T_var]: the minimal polynomial of multiplication by T_var
    on the quotient, found from the first linear relation among the normal forms of
    its powers."""
    F = gb.generators[0].field
    if length == 0:
        return [1]
    x = MPoly.var(F, 2, var)
    powers = [gb.reduce(MPoly.const(F, 2, 1))]
    for k in range(1, length + 1):
        powers.append(gb.reduce(powers[-1] * x))
        monos = sorted({m for p in powers for m in p.terms})
        rows = [{i: p.terms[m] for i, p in enumerate(powers) if m in p.terms} for m in monos]
        kernel = nullspace(F, rows, k + 1)
        if kernel:
            v = kernel[0]
            top = max(i for i, c in enumerate(v) if c)
            return upoly.monic(F, v[: top + 1])
    raise AssertionError("no relation among powers up to the quotient dimension")


def _big_field(base: GF, d: int) -> GF:
    if base.q**d > MAX_ORDER:
        raise FieldCapExceeded(f"closed points of degree {d} over F_{base.q} exceed the field-size cap")
    return field_create(base.p, base.k * d)


def closed_points(polys: list[MPoly]) -> list[ClosedPoint]:
    """All closed points of V(polys) in P^2 (the scheme must be 0-dimensional)."""
    polys = [f for f in polys if not f.is_zero()]
    if not polys or polys[0].nvars != 3:
        raise ValueError("need nonzero polynomials in 3 homogeneous variables")
    base = polys[0].field
    found: dict[frozenset, ClosedPoint] = {}

    def record(P: ProjPoint, d: int):
        cp = frobenius_orbit(P, base)
        if cp.degree == d and cp.orbit not in found:
            found[cp.orbit] = cp

    # chart z = 1
    affine = [dehomogenize(f, 2) for f in polys]
    affine = [g for g in affine if not g.is_zero()]
    if affine:
        gb, length = _affine_quotient(affine)
        if length is None:
            raise NotZeroDimensional("affine part is not 0-dimensional")
        ex, ey = _eliminant(gb, 0, length), _eliminant(gb, 1, length)
        if upoly.deg(ex) > 0:
            dxs = upoly.factor_degrees(base, ex)
            dys = upoly.factor_degrees(base, ey)
            # a closed point of degree d contributes at least d to the length
            for d in sorted({lcm(a, b) for a in dxs for b in dys if lcm(a, b) <= length}):
                big = _big_field(base, d)
                emb = embed_build(base, big)
                lifted = [f.map_coeffs(emb) for f in polys]
                for a in upoly.roots(big, [emb(c) for c in ex]):
                    h = []
                    for f in lifted:
                        h = upoly.gcd(big, h, _specialize(f, {0: a, 2: 1}, 1))
                    if not h:
                        raise NotZeroDimensional("a whole vertical line lies in the scheme")
                    for b in upoly.roots(big, h):
                        record(ProjPoint(big, (a, b, 1)), d)
    else:
        raise NotZeroDimensional("every generator is divisible by z")

    # line at infinity, chart y = 1: points [x:1:0]
    h = []
    for f in polys:
        h = upoly.gcd(base, h, _specialize(f, {1: 1, 2: 0}, 0))
    if not h:
        raise NotZeroDimensional("the line at infinity lies in the scheme")
    if upoly.deg(h) > 0:
        for d in sorted(upoly.factor_degrees(base, h)):
            big = _big_field(base, d)
            emb = embed_build(base, big)
            for a in upoly.roots(big, [emb(c) for c in h]):
                record(ProjPoint(big, (a, 1, 0)), d)
    if all(f.coeff((f.degree, 0, 0)) == 0 for f in polys):
        record(ProjPoint(base, (1, 0, 0)), 1)

    return sorted(found.values(), key=lambda cp: (cp.degree, cp.representative.coords))


@dataclass
class BezoutTerm:
    point: ClosedPoint
    mult: int

    @property
    def contribution(self) -> int:
        return self.mult * self.point.degree


@dataclass
class BezoutReport:
    deg_f: int
    deg_g: int
    terms: list[BezoutTerm]

    @property
    def total(self) -> int:
        return sum(t.contribution for t in self.terms)

    @property
    def expected(self) -> int:
        return self.deg_f * self.deg_g

    @property
    def ok(self) -> bool:
        return self.total == self.expected


def is_proper_pair(F: MPoly, G: MPoly) -> bool:
    from .ideals import projective_dimension

    return projective_dimension([F, G]) == 0


def bezout_check(F: MPoly, G: MPoly) -> BezoutReport:
    """Sum of i(P; F.G)·deg(P) over the closed points of V(F, G)."""
    terms = [BezoutTerm(cp, plane_intersection_mult(F, G, cp)) for cp in closed_points([F, G])]
    return BezoutReport(F.degree, G.degree, terms)


def closed_point_multiplicity(X: HypersurfaceScheme, cp: ClosedPoint) -> int:
    return multiplicity_at(X, cp.representative).mu


def singular_closed_points(X: HypersurfaceScheme) -> list[ClosedPoint]:
    """Closed singular points of a reduced plane curve."""
    if X.n != 2:
        raise ValueError("plane curves only")
    gens = [X.f] + [d for d in X.f.gradient() if not d.is_zero()]
    return closed_points(gens)
