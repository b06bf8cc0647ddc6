"""Corpus generation and end-to-end checks of the multiplicity inequalities.

Every report is exact: integers only, ratios as fractions, timings in
integer nanoseconds.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .gf import GF, parse_field_spec
from .geom import DEFAULT_BUDGET, ProjPoint, enum_proj, parse_point, proj_count, rational_points
from .ideals import is_reduced, singular_locus
from .linalg import nullspace
from .localmult import HypersurfaceScheme, multiplicity_at
from .mpoly import MPoly, compositions, format_poly, poly_parse, random_form


class NotReduced(ValueError):
    pass


# --------------------------------------------------------------------------
# corpus

@dataclass
class CorpusConfig:
    field: str
    n: int
    delta_range: tuple[int, int] = (2, 5)
    count: int = 10
    seed: int = 0
    require_reduced: bool = True
    force_singular_point: str | bool | None = None  # point string, True for a random rational point
    max_attempts: int = 200


@dataclass
class Corpus:
    config: CorpusConfig
    members: list[HypersurfaceScheme]
    planted: list[ProjPoint | None]
    attempts: int = 0
    rejected: int = 0


class RejectionBudgetExceeded(RuntimeError):
    pass


def singular_form_at(F: GF, nvars: int, delta: int, xi: ProjPoint, rng: random.Random) -> MPoly:
    """Random form of degree delta whose value and first partials vanish at xi."""
    monos = list(compositions(nvars, delta))
    rows = []
    pts = xi.coords
    # f(xi) = 0
    rows.append({j: _mono_val(F, pts, m) for j, m in enumerate(monos)})
    for i in range(nvars):
        row = {}
        for j, m in enumerate(monos):
            if m[i] % F.p:
                mm = list(m)
                mm[i] -= 1
                row[j] = F.mul(F.from_int(m[i]), _mono_val(F, pts, mm))
        rows.append(row)
    rows = [{k: v for k, v in r.items() if v} for r in rows]
    basis = nullspace(F, rows, len(monos))
    coeffs = [0] * len(monos)
    for vec in basis:
        c = rng.randrange(F.q)
        if c:
            coeffs = [F.add(a, F.mul(c, b)) for a, b in zip(coeffs, vec)]
    return MPoly(F, nvars, dict(zip(monos, coeffs)))


def form_through(F: GF, nvars: int, delta: int, xi: ProjPoint, rng: random.Random) -> MPoly:
    """Random form of degree delta vanishing at xi."""
    f = random_form(F, nvars, delta, rng)
    c = xi.chart()
    # T_c^delta takes the value 1 at xi
    return f - MPoly.monomial(F, nvars, tuple(delta if i == c else 0 for i in range(nvars)), f.eval(xi.coords))


def _mono_val(F: GF, pts, m) -> int:
    v = 1
    for x, e in zip(pts, m):
        if e:
            v = F.mul(v, F.pow(x, e))
    return v


def random_point(F: GF, n: int, rng: random.Random) -> ProjPoint:
    while True:
        coords = tuple(rng.randrange(F.q) for _ in range(n + 1))
        if any(coords):
            return ProjPoint(F, coords)


def generate_corpus(config: CorpusConfig) -> Corpus:
    F = parse_field_spec(config.field)
    rng = random.Random(config.seed)
    lo, hi = config.delta_range
    members, planted = [], []
    attempts = rejected = 0
    for _ in range(config.count):
        delta = rng.randint(lo, hi)
        xi = None
        if config.force_singular_point is True:
            xi = random_point(F, config.n, rng)
        elif config.force_singular_point:
            xi = parse_point(config.force_singular_point, F)
        for _try in range(config.max_attempts):
            attempts += 1
            if xi is None:
                f = random_form(F, config.n + 1, delta, rng)
            else:
                f = singular_form_at(F, config.n + 1, delta, xi, rng)
            if f.degree != delta:
                rejected += 1
                continue
            X = HypersurfaceScheme(f)
            if config.require_reduced and not is_reduced(X):
                rejected += 1
                continue
            members.append(X)
            planted.append(xi)
            break
        else:
            raise RejectionBudgetExceeded(f"no acceptable member after {config.max_attempts} attempts")
    return Corpus(config, members, planted, attempts, rejected)


def save_corpus(corpus: Corpus, path) -> None:
    data = {
        "field": corpus.config.field,
        "n": corpus.config.n,
        "seed": str(corpus.config.seed),
        "members": [format_poly(X.f) for X in corpus.members],
        "planted": [str(P) if P else None for P in corpus.planted],
    }
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)


# --------------------------------------------------------------------------
# main bound

def main_bound_rhs(delta: int, n: int, s: int, q: int) -> int:
    return sum(delta * (delta - 1) ** (n - s - 1 + t) * proj_count(s - t, q) for t in range(s + 1))


def main_bound_rhs_closed(delta: int, n: int, s: int, q: int) -> int:
    """Same value via geometric sums: delta(delta-1)^(n-s-1) sum_t (delta-1)^t (q^(s-t+1)-1)/(q-1)."""
    inner = sum((delta - 1) ** t * (q ** (s - t + 1) - 1) // (q - 1) for t in range(s + 1))
    return delta * (delta - 1) ** (n - s - 1) * inner


@dataclass
class BoundReport:
    poly: str
    field: str
    delta: int
    n: int
    q: int
    s: int
    lhs: int
    rhs: int
    ok: bool
    per_point: list[tuple[str, int]] = dc_field(default_factory=list)
    rational_points: int = 0
    ratio: Fraction = Fraction(0)
    timings: dict[str, int] = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "poly": self.poly,
            "field": self.field,
            "delta": str(self.delta),
            "n": str(self.n),
            "q": str(self.q),
            "s": str(self.s),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "ok": self.ok,
            "per_point": [{"point": p, "mu": str(mu)} for p, mu in self.per_point],
            "rational_points": str(self.rational_points),
            "ratio": str(self.ratio),
            "timings_ns": {k: str(v) for k, v in self.timings.items()},
        }

    @classmethod
    def from_json(cls, d: dict) -> "BoundReport":
        return cls(
            poly=d["poly"],
            field=d["field"],
            delta=int(d["delta"]),
            n=int(d["n"]),
            q=int(d["q"]),
            s=int(d["s"]),
            lhs=int(d["lhs"]),
            rhs=int(d["rhs"]),
            ok=bool(d["ok"]),
            per_point=[(e["point"], int(e["mu"])) for e in d["per_point"]],
            rational_points=int(d["rational_points"]),
            ratio=Fraction(d["ratio"]),
            timings={k: int(v) for k, v in d["timings_ns"].items()},
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def counting_chain(self) -> list[int]:
        """sum over singular rational points of mu(mu-1)^t, for t = 1..n-s-1."""
        return [sum(mu * (mu - 1) ** t for _, mu in self.per_point) for t in range(1, self.n - self.s)]


def verify_main_bound(X: HypersurfaceScheme, budget: int = DEFAULT_BUDGET) -> BoundReport:
    if X.n < 2:
        raise ValueError("need n >= 2")
    t0 = time.perf_counter_ns()
    sl = singular_locus(X)
    if sl.all_partials_zero or sl.dim > X.n - 2:
        raise NotReduced(f"{X} is not reduced")
    s = sl.dim
    t1 = time.perf_counter_ns()
    n, delta, q = X.n, X.delta, X.field.q
    expo = n - s - 1
    lhs = 0
    per_point = []
    count = 0
    for P in enum_proj(n, X.field, budget):
        if X.f.eval(P.coords):
            continue
        count += 1
        mu = multiplicity_at(X, P).mu
        if mu >= 2:
            per_point.append((str(P), mu))
            lhs += mu * (mu - 1) ** expo
    t2 = time.perf_counter_ns()
    rhs = main_bound_rhs(delta, n, s, q)
    ok = lhs <= rhs
    if s == -1:
        ok = lhs == 0
    scale = delta * (delta - 1) ** expo * max(delta - 1, q) ** max(s, 0)
    return BoundReport(
        format_poly(X.f), X.field.spec, delta, n, q, s, lhs, rhs, ok, per_point, count,
        Fraction(lhs, scale), {"singular_locus": t1 - t0, "points": t2 - t1},
    )


# --------------------------------------------------------------------------
# cylinder family

@dataclass
class CylinderReport:
    delta: int
    n: int
    q: int
    s: int
    lhs: int
    expected: int
    singular_points: int
    expected_singular_points: int
    mus: set[int]

    @property
    def ok(self) -> bool:
        return (
            self.s == self.n - 2
            and self.lhs == self.expected
            and self.singular_points == self.expected_singular_points
            and self.mus == {self.delta}
        )


def cylinder_poly(delta: int, n: int, F: GF) -> MPoly:
    """prod over delta distinct rational slopes of (T1 - c T2), with T2 as the slope at infinity."""
    if delta > F.q + 1:
        raise ValueError(f"need delta <= q+1 = {F.q + 1}")
    nv = n + 1
    T1, T2 = MPoly.var(F, nv, 1), MPoly.var(F, nv, 2)
    f = MPoly.const(F, nv, 1)
    for c in range(min(delta, F.q)):
        f = f * (T1 - T2.scale(c))
    if delta == F.q + 1:
        f = f * T2
    return f


def cylinder_family_check(delta: int, n: int, F: GF) -> CylinderReport:
    if n < 3:
        raise ValueError("need n >= 3")
    X = HypersurfaceScheme(cylinder_poly(delta, n, F))
    rep = verify_main_bound(X)
    return CylinderReport(
        delta, n, F.q, rep.s, rep.lhs,
        delta * (delta - 1) * proj_count(n - 2, F.q),
        len(rep.per_point), proj_count(n - 2, F.q),
        {mu for _, mu in rep.per_point},
    )


# --------------------------------------------------------------------------
# plane-curve bound and point-count bound

@dataclass
class FultonReport:
    delta: int
    rational_sum: int
    closed_sum: int | None
    bound: int

    @property
    def ok(self) -> bool:
        return self.rational_sum <= self.bound and (self.closed_sum is None or self.closed_sum <= self.bound)


def fulton_check(X: HypersurfaceScheme, over_closed_points: bool = True) -> FultonReport:
    from .plane import singular_closed_points

    if X.n != 2:
        raise ValueError("plane curves only")
    if not is_reduced(X):
        raise NotReduced(f"{X} is not reduced")
    rational = 0
    for P in rational_points(X.f):
        mu = multiplicity_at(X, P).mu
        rational += mu * (mu - 1)
    closed = None
    if over_closed_points:
        closed = 0
        for cp in singular_closed_points(X):
            mu = multiplicity_at(X, cp).mu
            closed += cp.degree * mu * (mu - 1)
    return FultonReport(X.delta, rational, closed, X.delta * (X.delta - 1))


@dataclass
class PointCountReport:
    points: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.points <= self.bound


def point_count_check(X: HypersurfaceScheme, budget: int = DEFAULT_BUDGET) -> PointCountReport:
    """#X(F_q) <= deg(X)·#P^(n-1)(F_q)."""
    count = sum(1 for P in enum_proj(X.n, X.field, budget) if X.f.eval(P.coords) == 0)
    return PointCountReport(count, X.delta * proj_count(X.n - 1, X.field.q))


# --------------------------------------------------------------------------
# sweeps

SWEEP_GRID = [(n, q, d) for n in (2, 3) for q in (2, 3, 5) for d in (2, 3, 4, 5)]


def sweep_corpus(count: int, seed: int, planted: bool = False) -> list[HypersurfaceScheme]:
    """Member i comes from grid cell i mod 24 of (n, q, delta), each with its own seed."""
    out = []
    for i in range(count):
        n, q, d = SWEEP_GRID[i % len(SWEEP_GRID)]
        cfg = CorpusConfig(str(q), n, (d, d), 1, seed * 1_000_003 + i, True, True if planted else None)
        out.extend(generate_corpus(cfg).members)
    return out
