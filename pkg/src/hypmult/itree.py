"""Intersection trees: labeled, edge-weighted trees of subscheme occurrences.

A forest hangs one tree off each component Y of a proper intersection
X_1 ... X_r, with the intersection multiplicity of Y as the root weight.
Labeled vertices carry a hypersurface-like subscheme (the label); their
children are the components of vertex ∩ label with edge weights equal to
intersection multiplicities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from math import prod
from typing import Iterator

from .gf import GF, field_create, parse_field_spec
from .geom import ClosedPoint, ProjPoint, frobenius_orbit, parse_point
from .localmult import HypersurfaceScheme, multiplicity_at, plane_intersection_mult
from .mpoly import MPoly, format_poly, poly_parse


@dataclass(eq=False)
class SchemeDescriptor:
    kind: str  # "point" or "registered"
    deg: int
    dim: int
    name: str = ""
    point: ClosedPoint | None = None
    equations: list[MPoly] | None = None
    mu: dict[str, int] = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("point", "registered"):
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        if self.kind == "point" and self.point is None:
            raise ValueError("point schemes need a closed point")

    @property
    def identity(self):
        if self.kind == "point":
            return ("point", self.point.orbit)
        return ("registered", self.name)

    def __eq__(self, other):
        return isinstance(other, SchemeDescriptor) and self.identity == other.identity

    def __hash__(self):
        return hash(self.identity)

    def contains_point(self, M: ClosedPoint) -> bool | None:
        """Does this scheme contain M?  None when it cannot be decided."""
        if self.kind == "point":
            return self.point.orbit == M.orbit
        if not self.equations:
            return None
        P = M.representative
        out = True
        for f in self.equations:
            if f.field != P.field:
                from .gf import embed_build

                f = f.map_coeffs(embed_build(f.field, P.field))
            out = out and f.eval(P.coords) == 0
        return out

    def __str__(self):
        return self.name or (str(self.point) if self.point else "?")


@dataclass
class Label:
    deg: int
    name: str = ""
    equations: list[MPoly] | None = None


@dataclass
class TreeVertex:
    scheme: SchemeDescriptor
    label: Label | None = None
    children: list[tuple[int, "TreeVertex"]] = dc_field(default_factory=list)

    def walk(self, weight: int = 1, path: tuple = ()) -> Iterator[tuple[tuple, int, "TreeVertex"]]:
        """(path, vertex weight, vertex) for this vertex and all descendants."""
        yield path, weight, self
        for i, (w, child) in enumerate(self.children):
            yield from child.walk(weight * w, path + (i,))


@dataclass
class IntersectionTree:
    root: TreeVertex
    level: int
    n: int
    field: GF
    root_weight: int | None = None


@dataclass
class Forest:
    trees: list[IntersectionTree]
    level: int
    n: int
    field: GF
    family: list[Label] = dc_field(default_factory=list)
    eligible: set[str] = dc_field(default_factory=set)

    def __iter__(self):
        return iter(self.trees)

    def __len__(self):
        return len(self.trees)

    def find(self, name: str) -> SchemeDescriptor:
        for t in self.trees:
            for _, _, v in t.root.walk():
                if v.scheme.name == name:
                    return v.scheme
        raise KeyError(f"no scheme named {name!r} in the forest")


# --------------------------------------------------------------------------
# weights

def vertex_weight(tree: IntersectionTree, path) -> int:
    """Product of edge weights from the root along ``path`` (child indices)."""
    v, w = tree.root, 1
    for i in path:
        if not 0 <= i < len(v.children):
            raise KeyError(f"path {tuple(path)} is not in the tree")
        ew, v = v.children[i]
        w *= ew
    return w


def _trees(forest):
    if isinstance(forest, IntersectionTree):
        return [forest]
    return list(forest)


def scheme_weight(forest, Z: SchemeDescriptor) -> int:
    """Sum of vertex weights over every occurrence of Z."""
    return sum(w for t in _trees(forest) for _, w, v in t.root.walk() if v.scheme == Z)


def aggregate_lhs(forest, M: SchemeDescriptor) -> int:
    total = 0
    for t in _trees(forest):
        if t.root_weight is None:
            raise ValueError(f"tree rooted at {t.root.scheme} has no root weight")
        total += t.root_weight * scheme_weight(t, M)
    return total


# --------------------------------------------------------------------------
# checks

@dataclass
class Verdict:
    status: str  # "pass", "fail" or "not-applicable"
    lhs: int | None = None
    rhs: int | None = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def eligibility(forest, M: SchemeDescriptor, eligible: set[str] | None = None) -> tuple[bool, str]:
    """Every vertex strictly containing M must have a descendant occurrence of M.

    Containment is tested from equations for point targets; vertices whose
    containment is undecidable fall back to the caller-asserted ``eligible``
    names."""
    if eligible is None and isinstance(forest, Forest):
        eligible = forest.eligible
    eligible = eligible or set()
    if M.kind != "point":
        if M.name in eligible:
            return True, "caller-asserted"
        return False, f"{M} is not a point and is not asserted eligible"
    for t in _trees(forest):
        for _, _, v in t.root.walk():
            if v.scheme == M:
                continue
            inside = v.scheme.contains_point(M.point)
            if inside is None:
                if M.name in eligible:
                    continue
                return False, f"cannot decide whether {v.scheme} contains {M}"
            if inside and not any(d.scheme == M for _, _, d in v.walk()):
                return False, f"{v.scheme} contains {M} but has no descendant occurrence of it"
    return True, "structural"


def check_descendant_weight(forest, M: SchemeDescriptor, mu_product: int, eligible: set[str] | None = None) -> Verdict:
    """aggregate_lhs(M) >= prod_i mu_M(X_i) for eligible M."""
    ok, why = eligibility(forest, M, eligible)
    if not ok:
        return Verdict("not-applicable", reason=why)
    lhs = aggregate_lhs(forest, M)
    return Verdict("pass" if lhs >= mu_product else "fail", lhs, mu_product, why)


def validate_tree(tree: IntersectionTree) -> list[str]:
    out = []
    for path, _, v in tree.root.walk():
        where = f"{v.scheme} at {path}"
        s = v.scheme
        if s.deg < 1:
            out.append(f"{where}: degree {s.deg} < 1")
        if s.dim < 0:
            out.append(f"{where}: negative dimension")
        if s.kind == "point" and (s.dim != 0 or s.deg != s.point.degree):
            out.append(f"{where}: closed point must have dim 0 and deg = orbit size {s.point.degree}")
        if v.label is not None and not v.children:
            out.append(f"{where}: leaf with label")
        if v.label is None and v.children:
            out.append(f"{where}: children without label")
        if v.label is not None:
            if v.label.deg > tree.level:
                out.append(f"{where}: label degree {v.label.deg} exceeds level {tree.level}")
            total = sum(w * c.scheme.deg for w, c in v.children)
            if v.children and total != s.deg * v.label.deg:
                out.append(f"{where}: Bezout violation, sum of weight*deg = {total} != {s.deg}*{v.label.deg}")
        for w, c in v.children:
            if not isinstance(w, int) or w < 1:
                out.append(f"{where}: edge weight {w!r} is not a positive integer")
            if not (c.scheme.dim < s.dim or (s.dim == 0 and c.scheme.dim == 0)):
                out.append(f"{where}: child {c.scheme} does not drop dimension")
            if c.scheme.kind == "point" and s.equations and s.contains_point(c.scheme.point) is False:
                out.append(f"{where}: child point {c.scheme} is not on the vertex")
            if c.scheme.kind == "point" and v.label and v.label.equations:
                lab = SchemeDescriptor("registered", 1, 0, equations=v.label.equations)
                if lab.contains_point(c.scheme.point) is False:
                    out.append(f"{where}: child point {c.scheme} is not on the label")
    return out


def validate_forest(forest: Forest) -> list[str]:
    return [msg for t in forest for msg in validate_tree(t)]


def check_root_degree_bound(forest: Forest, family_degrees: list[int] | None = None) -> Verdict:
    """sum over roots Z of (prod_i mu_Z(X_i))·deg Z <= prod_i deg X_i."""
    degs = family_degrees or [lab.deg for lab in forest.family]
    if not degs:
        raise ValueError("family degrees unknown")
    names = [lab.name for lab in forest.family] if forest.family else None
    lhs = 0
    for t in forest:
        s = t.root.scheme
        mus = [s.mu[nm] for nm in names] if names else list(s.mu.values())
        if len(mus) != len(degs):
            raise ValueError(f"root {s} lacks recorded multiplicities")
        lhs += prod(mus) * s.deg
    rhs = prod(degs)
    return Verdict("pass" if lhs <= rhs else "fail", lhs, rhs)


def mu_product(forest: Forest, M: SchemeDescriptor) -> int:
    """prod_i mu_M(X_i) computed from the family's equations (hypersurfaces only)."""
    if M.kind != "point":
        raise ValueError("multiplicities are computed for point targets only")
    out = 1
    for lab in forest.family:
        if not lab.equations or len(lab.equations) != 1:
            raise ValueError(f"family member {lab.name} is not a hypersurface")
        out *= multiplicity_at(HypersurfaceScheme(lab.equations[0]), M.point).mu
    return out


# --------------------------------------------------------------------------
# automatic construction for plane curves

@dataclass
class PlaneForest:
    forest: Forest
    curve: HypersurfaceScheme
    g1: MPoly
    m: int

    @property
    def bezout_total(self) -> int:
        return sum(t.root_weight * t.root.scheme.deg for t in self.forest)


def build_plane_forest(X: HypersurfaceScheme) -> PlaneForest:
    """Depth-0 forest of X . V(g_1) for a reduced plane curve, g_1 from the
    complete-intersection search among first partials."""
    from .ideals import complete_intersection_search, is_reduced, singular_locus_dim
    from .plane import closed_points

    if X.n != 2:
        raise ValueError("automatic construction is implemented for plane curves only")
    if not is_reduced(X):
        raise ValueError("curve is not reduced")
    s = singular_locus_dim(X)
    empty = Forest([], X.delta, 2, X.field)
    if s < 0:
        return PlaneForest(empty, X, MPoly.zero(X.field, 3), 1)
    ci = complete_intersection_search(X, s)
    f, g1 = ci.f, ci.gs[0]
    Xb, G = HypersurfaceScheme(f, "X"), HypersurfaceScheme(g1, "g1")
    family = [Label(f.degree, "X", [f]), Label(g1.degree, "g1", [g1])]
    trees = []
    for k, cp in enumerate(closed_points([f, g1])):
        i = plane_intersection_mult(f, g1, cp)
        mu = {"X": multiplicity_at(Xb, cp).mu, "g1": multiplicity_at(G, cp).mu}
        sd = SchemeDescriptor("point", cp.degree, 0, f"Z{k}", point=cp, mu=mu)
        trees.append(IntersectionTree(TreeVertex(sd), X.delta, 2, ci.field, i))
    forest = Forest(trees, X.delta, 2, ci.field, family, {t.root.scheme.name for t in trees})
    return PlaneForest(forest, X, g1, ci.m)


# --------------------------------------------------------------------------
# JSON

def _point_to_json(cp: ClosedPoint, base: GF) -> dict:
    d = {"point": str(cp.representative)}
    if cp.residue_degree != 1:
        d["residue_degree"] = cp.residue_degree
    return d


def _scheme_to_json(s: SchemeDescriptor, base: GF) -> dict:
    d = {"kind": s.kind, "deg": s.deg, "dim": s.dim}
    if s.name:
        d["name"] = s.name
    if s.kind == "point":
        d.update(_point_to_json(s.point, base))
    if s.equations:
        d["equations"] = [format_poly(f) for f in s.equations]
    if s.mu:
        d["mu"] = dict(s.mu)
    return d


def _label_to_json(lab: Label) -> dict:
    d = {"deg": lab.deg}
    if lab.name:
        d["name"] = lab.name
    if lab.equations:
        d["equations"] = [format_poly(f) for f in lab.equations]
    return d


def _vertex_to_json(v: TreeVertex, base: GF) -> dict:
    d = {"scheme": _scheme_to_json(v.scheme, base)}
    if v.label is not None:
        d["label"] = _label_to_json(v.label)
    d["children"] = [{"weight": w, "vertex": _vertex_to_json(c, base)} for w, c in v.children]
    return d


def forest_to_json(forest: Forest) -> dict:
    roots = []
    for t in forest:
        d = _vertex_to_json(t.root, forest.field)
        if t.root_weight is not None:
            d["root_weight"] = t.root_weight
        roots.append(d)
    out = {"level": forest.level, "ambient": {"n": forest.n, "field": forest.field.spec}, "roots": roots}
    if forest.family:
        out["family"] = [_label_to_json(lab) for lab in forest.family]
    if forest.eligible:
        out["eligible"] = sorted(forest.eligible)
    return out


def dump_forest(forest: Forest, path) -> None:
    with open(path, "w") as fh:
        json.dump(forest_to_json(forest), fh, indent=2)


class TreeFormatError(ValueError):
    pass


def _parse_scheme(d: dict, F: GF, n: int) -> SchemeDescriptor:
    try:
        kind, deg, dim = d["kind"], int(d["deg"]), int(d["dim"])
    except KeyError as e:
        raise TreeFormatError(f"scheme is missing field {e}") from None
    eqs = [poly_parse(t, F, n + 1) for t in d.get("equations", [])] or None
    cp = None
    if kind == "point":
        m = int(d.get("residue_degree", 1))
        big = F if m == 1 else field_create(F.p, F.k * m)
        cp = frobenius_orbit(parse_point(d["point"], big), F)
    return SchemeDescriptor(kind, deg, dim, d.get("name", ""), cp, eqs, {k: int(v) for k, v in d.get("mu", {}).items()})


def _parse_label(d: dict, F: GF, n: int) -> Label:
    eqs = [poly_parse(t, F, n + 1) for t in d.get("equations", [])] or None
    return Label(int(d["deg"]), d.get("name", ""), eqs)


def _parse_vertex(d: dict, F: GF, n: int) -> TreeVertex:
    v = TreeVertex(_parse_scheme(d["scheme"], F, n))
    if d.get("label") is not None:
        v.label = _parse_label(d["label"], F, n)
    for c in d.get("children", []):
        v.children.append((int(c["weight"]), _parse_vertex(c["vertex"], F, n)))
    return v


def forest_from_json(data: dict) -> Forest:
    try:
        level = int(data["level"])
        n = int(data["ambient"]["n"])
        F = parse_field_spec(str(data["ambient"]["field"]))
        roots = data["roots"]
    except (KeyError, TypeError) as e:
        raise TreeFormatError(f"malformed tree file: {e}") from None
    trees = []
    for r in roots:
        rw = r.get("root_weight")
        trees.append(IntersectionTree(_parse_vertex(r, F, n), level, n, F, None if rw is None else int(rw)))
    family = [_parse_label(d, F, n) for d in data.get("family", [])]
    return Forest(trees, level, n, F, family, set(data.get("eligible", [])))


def load_forest(path) -> Forest:
    with open(path) as fh:
        return forest_from_json(json.load(fh))


def p4_example() -> Forest:
    """The two-hypersurface example in P^4 (X_1 = V(T4), X_2 = V(T3·C))."""
    text = resources.files("hypmult.data").joinpath("p4_example.json").read_text()
    return forest_from_json(json.loads(text))
