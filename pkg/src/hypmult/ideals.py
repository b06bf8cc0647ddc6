"""Buchberger's algorithm over finite fields, ideal dimensions, the Jacobian
singular locus, reducedness, and the search for complete-intersection
sequences among first partials.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .gf import GF, extension
from .mpoly import MPoly
from .localmult import HypersurfaceScheme

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    priority: tuple[int, ...] | None = None  # variable indices, most significant first

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def _perm(self, m: Monomial) -> Monomial:
        return tuple(m[i] for i in self.priority) if self.priority else m

    def key(self, m: Monomial):
        """Sort key: larger key means larger monomial."""
        m = self._perm(m)
        if self.kind == "lex":
            return m
        return (sum(m), tuple(-e for e in reversed(m)))

    def heap_key(self, m: Monomial):
        """Key whose minimum is the largest monomial."""
        m = self._perm(m)
        if self.kind == "lex":
            return tuple(-e for e in m)
        return (-sum(m), tuple(reversed(m)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


@dataclass(frozen=True)
class Ceiling:
    max_vars: int = 6
    max_input_degree: int = 12
    max_degree: int = 60
    max_pairs: int = 200_000


class CeilingExceeded(RuntimeError):
    def __init__(self, msg: str, stats: dict):
        super().__init__(f"{msg} (stats: {stats})")
        self.stats = stats


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Arith:
    """Coefficient operations specialised for prime fields."""

    def __init__(self, F: GF):
        self.F = F
        if F.k == 1:
            p = F.p
            self.mul = lambda a, b: a * b % p
            self.sub = lambda a, b: (a - b) % p
        else:
            self.mul = F.mul
            self.sub = F.sub
        self.inv = F.inv


def _leading(terms: dict, order: MonomialOrder) -> Monomial:
    return max(terms, key=order.key)


def _normal_form(terms: dict, reducers: list, order: MonomialOrder, A: _Arith, full: bool = True) -> dict:
    """Reduce ``terms`` by monic reducers given as (lm, terms) pairs."""
    work = dict(terms)
    hk = order.heap_key
    heap = [(hk(m), m) for m in work]
    heapq.heapify(heap)
    rem = {}
    mul, sub = A.mul, A.sub
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        for lm, g in reducers:
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    t = tuple(x + y for x, y in zip(gm, shift))
                    old = work.get(t)
                    if old is None:
                        work[t] = sub(0, mul(c, gc))
                        heapq.heappush(heap, (hk(t), t))
                    else:
                        nv = sub(old, mul(c, gc))
                        if nv:
                            work[t] = nv
                        else:
                            del work[t]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(work)
                return rem
    return rem


def _monic(terms: dict, order: MonomialOrder, A: _Arith):
    lm = _leading(terms, order)
    c = terms[lm]
    if c != 1:
        inv = A.inv(c)
        terms = {m: A.mul(v, inv) for m, v in terms.items()}
    return lm, terms


@dataclass
class GroebnerBasis:
    generators: list[MPoly]
    order: MonomialOrder
    homogeneous: bool
    stats: dict = dc_field(default_factory=dict)

    @property
    def field(self) -> GF:
        return self.generators[0].field

    def leading_monomials(self) -> list[Monomial]:
        return [_leading(g.terms, self.order) for g in self.generators]

    def _reducers(self):
        return [(_leading(g.terms, self.order), g.terms) for g in self.generators]

    def reduce(self, f: MPoly) -> MPoly:
        if not self.generators:
            return f
        r = _normal_form(f.terms, self._reducers(), self.order, _Arith(f.field))
        return MPoly(f.field, f.nvars, r)

    def contains(self, f: MPoly) -> bool:
        return self.reduce(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials())

    def spairs_reduce_to_zero(self) -> bool:
        """Check Buchberger's criterion over every pair."""
        red = self._reducers()
        A = _Arith(self.field)
        for (l1, g1), (l2, g2) in itertools.combinations(red, 2):
            s = _spoly(l1, g1, l2, g2, A)
            if s and _normal_form(s, red, self.order, A):
                return False
        return True

    def is_reduced(self) -> bool:
        red = self._reducers()
        for i, (lm, g) in enumerate(red):
            if g[lm] != 1:
                return False
            for j, (lm2, _) in enumerate(red):
                if i != j and any(_divides(lm2, m) for m in g):
                    return False
        return True

    def affine_dimension(self) -> int:
        """Krull dimension of k[x]/I: the largest variable set S such that no
        leading monomial is supported inside S (-1 for the unit ideal)."""
        lms = self.leading_monomials()
        nv = self.generators[0].nvars if self.generators else 0
        if not self.generators:
            return nv
        if self.is_unit_ideal():
            return -1
        supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
        for size in range(nv, -1, -1):
            for S in itertools.combinations(range(nv), size):
                S = frozenset(S)
                if not any(sup <= S for sup in supports):
                    return size
        return 0


def _spoly(l1, g1, l2, g2, A: _Arith) -> dict:
    lcm = _lcm(l1, l2)
    s1 = tuple(x - y for x, y in zip(lcm, l1))
    s2 = tuple(x - y for x, y in zip(lcm, l2))
    out = {}
    for m, c in g1.items():
        if m != l1:
            out[tuple(x + y for x, y in zip(m, s1))] = c
    for m, c in g2.items():
        if m != l2:
            t = tuple(x + y for x, y in zip(m, s2))
            nv = A.sub(out.get(t, 0), c)
            if nv:
                out[t] = nv
            else:
                out.pop(t, None)
    return out


def buchberger(gens: Sequence[MPoly], order: MonomialOrder = GREVLEX, ceiling: Ceiling = Ceiling()) -> GroebnerBasis:
    """Reduced Groebner basis with Gebauer-Moeller pair pruning and the sugar
    selection strategy (ties broken by the term order)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    F, nv = gens[0].field, gens[0].nvars
    for g in gens:
        if g.field != F or g.nvars != nv:
            raise ValueError("generators live in different rings")
    if nv > ceiling.max_vars:
        raise CeilingExceeded(f"{nv} variables exceeds ceiling {ceiling.max_vars}", {"nvars": nv})
    dmax = max(g.degree for g in gens)
    if dmax > ceiling.max_input_degree:
        raise CeilingExceeded(f"input degree {dmax} exceeds ceiling {ceiling.max_input_degree}", {"degree": dmax})
    homogeneous = all(g.is_homogeneous() for g in gens)
    A = _Arith(F)
    key = order.key

    polys: list[tuple[Monomial, dict]] = []
    sugar: list[int] = []
    active: list[int] = []
    pairs: list = []
    stats = {"pairs_processed": 0, "zero_reductions": 0, "max_degree": dmax}

    def pair_entry(i, j):
        lcm = _lcm(polys[i][0], polys[j][0])
        d = sum(lcm)
        sug = max(sugar[i] + d - sum(polys[i][0]), sugar[j] + d - sum(polys[j][0]))
        return (sug, order.heap_key(lcm), i, j)

    def update(h):
        nonlocal active, pairs
        lh = polys[h][0]
        C = list(active)
        D = []
        while C:
            g1 = C.pop(0)
            l1 = polys[g1][0]
            if _coprime(lh, l1):
                D.append(g1)
                continue
            lc = _lcm(lh, l1)
            if not any(_divides(_lcm(lh, polys[g2][0]), lc) for g2 in C + D):
                D.append(g1)
        E = [g for g in D if not _coprime(lh, polys[g][0])]
        kept = []
        for entry in pairs:
            _, _, i, j = entry
            lij = _lcm(polys[i][0], polys[j][0])
            if (
                _divides(lh, lij)
                and _lcm(polys[i][0], lh) != lij
                and _lcm(lh, polys[j][0]) != lij
            ):
                continue
            kept.append(entry)
        kept.extend(pair_entry(g, h) for g in E)
        heapq.heapify(kept)
        pairs = kept
        active = [g for g in active if not _divides(lh, polys[g][0])] + [h]

    def add(terms, sug):
        lm, terms = _monic(terms, order, A)
        polys.append((lm, terms))
        sugar.append(sug)
        update(len(polys) - 1)

    # seed with interreduced-ish input (sorted for determinism)
    for g in sorted(gens, key=lambda g: key(_leading(g.terms, order))):
        r = _normal_form(g.terms, [polys[i] for i in active], order, A)
        if r:
            add(r, g.degree)

    while pairs:
        stats["pairs_processed"] += 1
        if stats["pairs_processed"] > ceiling.max_pairs:
            stats.update(queue=len(pairs), basis=len(active))
            raise CeilingExceeded("pair budget exhausted", stats)
        sug, _, i, j = heapq.heappop(pairs)
        s = _spoly(polys[i][0], polys[i][1], polys[j][0], polys[j][1], A)
        if not s:
            stats["zero_reductions"] += 1
            continue
        r = _normal_form(s, [polys[k] for k in active], order, A)
        if not r:
            stats["zero_reductions"] += 1
            continue
        d = max(sum(m) for m in r)
        stats["max_degree"] = max(stats["max_degree"], d)
        if d > ceiling.max_degree:
            stats.update(queue=len(pairs), basis=len(active))
            raise CeilingExceeded(f"intermediate degree {d} exceeds ceiling {ceiling.max_degree}", stats)
        add(r, max(sug, d))

    # interreduce the minimal basis
    basis = [polys[i] for i in active]
    basis.sort(key=lambda t: key(t[0]))
    final = []
    for idx, (lm, g) in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        r = _normal_form(g, others, order, A)
        lm2, r = _monic(r, order, A)
        final.append((lm2, r))
    final.sort(key=lambda t: key(t[0]), reverse=True)
    stats["basis_size"] = len(final)
    return GroebnerBasis([MPoly(F, nv, g) for _, g in final], order, homogeneous, stats)


def projective_dimension(gens: Sequence[MPoly], ceiling: Ceiling = Ceiling()) -> int:
    """Dimension of the projective vanishing locus of a homogeneous ideal (-1 if empty)."""
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("projective_dimension needs homogeneous generators")
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("zero ideal")
    gb = buchberger(gens, GREVLEX, ceiling)
    return max(gb.affine_dimension() - 1, -1)


@dataclass
class SingularLocus:
    dim: int
    basis_size: int
    all_partials_zero: bool


def singular_locus(X: HypersurfaceScheme, ceiling: Ceiling = Ceiling()) -> SingularLocus:
    f = X.f
    partials = [d for d in f.gradient() if not d.is_zero()]
    if not partials:
        return SingularLocus(X.n - 1, 1, True)
    gb = buchberger([f] + partials, GREVLEX, ceiling)
    return SingularLocus(max(gb.affine_dimension() - 1, -1), len(gb.generators), False)


def singular_locus_dim(X: HypersurfaceScheme, ceiling: Ceiling = Ceiling()) -> int:
    return singular_locus(X, ceiling).dim


@dataclass
class ReducedVerdict:
    reduced: bool
    reason: str
    singular_dim: int | None = None

    def __bool__(self):
        return self.reduced


def is_reduced(X: HypersurfaceScheme, ceiling: Ceiling = Ceiling()) -> ReducedVerdict:
    sl = singular_locus(X, ceiling)
    if sl.all_partials_zero:
        return ReducedVerdict(False, "all partial derivatives vanish identically (f is a p-th power)", sl.dim)
    if sl.dim <= X.n - 2:
        return ReducedVerdict(True, f"singular locus has dimension {sl.dim} <= n-2", sl.dim)
    return ReducedVerdict(False, f"singular locus has dimension {sl.dim} = n-1 (repeated component)", sl.dim)


@dataclass
class CompleteIntersection:
    m: int
    field: GF
    f: MPoly
    gs: list[MPoly]
    coefficients: list[tuple[int, ...]]  # coefficient vector of each g on the partials


class SearchExhausted(RuntimeError):
    pass


def _candidate_vectors(F: GF, n1: int, cap: int):
    """Unit vectors first, then all normalized coefficient vectors in lexicographic order."""
    units = [tuple(int(i == j) for j in range(n1)) for i in range(n1)]
    yield from units
    seen = set(units)
    count = n1
    for vec in itertools.product(range(F.q), repeat=n1):
        if count >= cap:
            return
        if not any(vec) or vec in seen:
            continue
        if next(c for c in vec if c) != 1:
            continue
        count += 1
        yield vec


def complete_intersection_search(
    X: HypersurfaceScheme,
    s: int | None = None,
    max_m: int = 12,
    max_candidates: int = 400,
    ceiling: Ceiling = Ceiling(),
) -> CompleteIntersection:
    """Find g_1..g_{n-s-1} in the span of the first partials (over F_{q^m})
    with dim V(f, g_1..g_t) = n-1-t at each step; m is increased from 1."""
    if s is None:
        s = singular_locus_dim(X, ceiling)
    n = X.n
    if s < 0:
        raise ValueError("smooth hypersurface: nothing to search for")
    if s > n - 2:
        raise ValueError(f"singular locus dimension {s} > n-2")
    need = n - s - 1
    for m in range(1, max_m + 1):
        if m == 1:
            big, f = X.field, X.f
        else:
            big, emb = extension(X.field, m)
            f = X.f.map_coeffs(emb)
        partials = f.gradient()
        gs, vecs = [], []
        for t in range(1, need + 1):
            found = False
            for vec in _candidate_vectors(big, n + 1, max_candidates):
                g = MPoly.zero(big, n + 1)
                for c, d in zip(vec, partials):
                    if c:
                        g = g + d.scale(c)
                if g.is_zero():
                    continue
                if projective_dimension([f] + gs + [g], ceiling) == n - 1 - t:
                    gs.append(g)
                    vecs.append(vec)
                    found = True
                    break
            if not found:
                break
        if len(gs) == need:
            return CompleteIntersection(m, big, f, gs, vecs)
    raise SearchExhausted(f"no complete intersection found for m <= {max_m}")
