"""Randomized property checks shared by the hypothesis tests and the
acceptance run.  Each takes a random.Random and returns None or raises."""

import random

from hypmult.gf import extension, field_create
from hypmult.ideals import GREVLEX, LEX, buchberger
from hypmult.itree import IntersectionTree, SchemeDescriptor, TreeVertex, Label, scheme_weight, vertex_weight
from hypmult.mpoly import MPoly, compositions, hasse_expand, random_form, shift, translate
from hypmult.geom import ClosedPoint, ProjPoint, frobenius_orbit

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 4)]


def random_field(rng):
    return field_create(*rng.choice(SMALL_FIELDS))


def field_axioms(rng):
    F = random_field(rng)
    a, b, c = (rng.randrange(F.q) for _ in range(3))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0 and F.add(a, 0) == a and F.mul(a, 1) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.pow(a, F.q) == a


def _random_poly(F, nvars, maxdeg, rng, terms=6):
    t = {}
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, maxdeg)
        m = rng.choice(list(compositions(nvars, d)))
        t[m] = rng.randrange(F.q)
    return MPoly(F, nvars, t)


def hasse_identity(rng):
    """f(t + s) = f(t) + sum_I g^I(t) s^I over F_{q^2}."""
    F = field_create(*rng.choice([(2, 1), (3, 1), (5, 1), (2, 2)]))
    nv = rng.randint(2, 4)
    delta = rng.randint(1, 5)
    f = random_form(F, nv, delta, rng, density=0.5)
    if f.is_zero():
        return
    big, emb = extension(F, 2)
    fb = f.map_coeffs(emb)
    t = [rng.randrange(big.q) for _ in range(nv)]
    s = [rng.randrange(big.q) for _ in range(nv)]
    lhs = fb.eval([big.add(a, b) for a, b in zip(t, s)])
    rhs = fb.eval(t)
    for alpha in range(1, delta + 1):
        D = hasse_expand(fb, alpha)
        for I, g in D.entries.items():
            assert g.is_homogeneous() and g.degree == delta - alpha
            mono = 1
            for x, e in zip(s, I):
                mono = big.mul(mono, big.pow(x, e))
            rhs = big.add(rhs, big.mul(g.eval(t), mono))
    assert lhs == rhs


def translation_composition(rng):
    F = random_field(rng)
    nv = rng.randint(1, 3)
    g = _random_poly(F, nv, 4, rng)
    a = [rng.randrange(F.q) for _ in range(nv)]
    b = [rng.randrange(F.q) for _ in range(nv)]
    ab = [F.add(x, y) for x, y in zip(a, b)]
    assert shift(shift(g, a), b) == shift(g, ab)
    # and translate of a homogeneous form agrees with evaluation
    f = random_form(F, nv + 1, rng.randint(1, 4), rng, density=0.6)
    pt = [1] + [rng.randrange(F.q) for _ in range(nv)]
    x = [rng.randrange(F.q) for _ in range(nv)]
    loc = translate(f, pt, 0)
    assert loc.eval(x) == f.eval([1] + [F.add(u, v) for u, v in zip(pt[1:], x)])


def spair_reduction(rng):
    F = field_create(*rng.choice([(2, 1), (3, 1), (5, 1), (7, 1), (2, 2)]))
    nv = rng.randint(2, 3)
    gens = [_random_poly(F, nv, 3, rng, terms=4) for _ in range(rng.randint(1, 3))]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    gb = buchberger(gens, rng.choice([GREVLEX, LEX]))
    assert gb.spairs_reduce_to_zero()
    assert gb.is_reduced()
    assert all(gb.contains(g) for g in gens)


def _random_tree(rng, depth=0):
    F = field_create(5)
    name = f"Z{rng.randrange(6)}"
    v = TreeVertex(SchemeDescriptor("registered", 1, 3 - depth, name))
    if depth < 3 and rng.random() < 0.7:
        v.label = Label(1)
        for _ in range(rng.randint(1, 3)):
            v.children.append((rng.randint(1, 4), _random_tree(rng, depth + 1)))
    return v


def tree_weight_algebra(rng):
    F = field_create(5)
    tree = IntersectionTree(_random_tree(rng), 4, 3, F, 1)
    occ = list(tree.root.walk())
    for path, w, v in occ:
        assert vertex_weight(tree, path) == w
        if path:
            parent = path[:-1]
            ew = None
            pv = tree.root
            for i in parent:
                pv = pv.children[i][1]
            ew = pv.children[path[-1]][0]
            assert w == vertex_weight(tree, parent) * ew
    Z = rng.choice(occ)[2].scheme
    before = scheme_weight(tree, Z)
    assert before == sum(w for _, w, v in occ if v.scheme.name == Z.name)
    # duplicating an occurrence adds exactly its vertex weight
    path, w, v = rng.choice([o for o in occ if o[2].scheme == Z])
    if path:
        pv = tree.root
        for i in path[:-1]:
            pv = pv.children[i][1]
        ew = pv.children[path[-1]][0]
        pv.children.append((ew, TreeVertex(SchemeDescriptor("registered", 1, v.scheme.dim, Z.name))))
        assert scheme_weight(tree, Z) == before + w
    absent = SchemeDescriptor("registered", 1, 0, "absent")
    assert scheme_weight(tree, absent) == 0


PROPERTIES = {
    "field axioms": field_axioms,
    "Hasse identity": hasse_identity,
    "translation composition": translation_composition,
    "S-pair reduction": spair_reduction,
    "tree weight algebra": tree_weight_algebra,
}
