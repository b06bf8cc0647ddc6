import copy
import json
import random

import pytest
from hypothesis import given, strategies as st

from hypmult.gf import field_create
from hypmult.geom import ProjPoint, frobenius_orbit
from hypmult.itree import (
    Forest, IntersectionTree, Label, SchemeDescriptor, TreeFormatError, TreeVertex, aggregate_lhs,
    build_plane_forest, check_descendant_weight, check_root_degree_bound, eligibility, forest_from_json, forest_to_json,
    mu_product, p4_example, scheme_weight, validate_forest, validate_tree,
)
from hypmult.localmult import HypersurfaceScheme, local_intersection_length, multiplicity_at
from hypmult.mpoly import poly_parse

import props

F5 = field_create(5)


@pytest.fixture
def forest():
    return p4_example()


def _vertex(forest, name):
    for t in forest:
        for path, w, v in t.root.walk():
            if v.scheme.name == name:
                return t, path, w, v
    raise KeyError(name)


def test_fixture_is_valid(forest):
    assert validate_forest(forest) == []
    assert forest.level == 4 and forest.n == 4 and len(forest) == 2


def test_fixture_weights(forest):
    M = forest.find("Y121")
    assert _vertex(forest, "Y121")[2] == 2
    assert _vertex(forest, "Y21")[2] == 1
    assert M == forest.find("Y21")  # same closed point, two occurrences
    assert [scheme_weight(t, M) for t in forest] == [2, 1]
    assert aggregate_lhs(forest, M) == 3


def test_fixture_descendant_weight(forest):
    M = forest.find("Y121")
    assert mu_product(forest, M) == 3
    v = check_descendant_weight(forest, M, mu_product(forest, M))
    assert v.status == "pass" and (v.lhs, v.rhs) == (3, 3)
    assert check_descendant_weight(forest, M, 4).status == "fail"


def test_fixture_root_degree_bound(forest):
    v = check_root_degree_bound(forest)
    assert v.status == "pass" and (v.lhs, v.rhs) == (4, 4)


def _plane_point(text):
    return ProjPoint(F5, tuple(int(x) for x in text.split(":")))


def test_fixture_edge_weights_are_local_lengths():
    C = "T0^2*T1 - T2^3 + T1*T2^2"
    # on the plane T3 = T4 = 0, coordinates (T0, T1, T2)
    plane = lambda s: poly_parse(s, F5, 3)
    assert local_intersection_length([plane(C), plane("T2")], _plane_point("0:1:0")) == 2
    assert local_intersection_length([plane(C), plane("T2")], _plane_point("1:0:0")) == 1
    lab = [plane("T2"), plane("T0^2 + T0*T1")]
    assert local_intersection_length(lab, _plane_point("0:1:0")) == 1
    assert local_intersection_length(lab, _plane_point("1:4:0")) == 1
    # on the line T1 = T2 = T4 = 0, coordinates (T0, T3)
    line = poly_parse("T0 + T1", F5, 2)
    assert local_intersection_length([line], _plane_point("1:4")) == 1
    # Y1 meets V(T1) along the line with multiplicity 3: slice the line
    # transversally inside P^3 = V(T4) and measure the length at [1:0:0:1]
    space = lambda s: poly_parse(s, F5, 4)
    P = ProjPoint(F5, (1, 0, 0, 1))
    assert local_intersection_length([space(C), space("T1"), space("T3 - T0")], P) == 3


def test_fixture_mu_values(forest):
    X2 = HypersurfaceScheme(forest.family[1].equations[0])
    pt = lambda s: ProjPoint(F5, tuple(int(x) for x in s.split(":")))
    assert multiplicity_at(X2, pt("0:1:0:0:0")).mu == 3
    assert multiplicity_at(X2, pt("1:0:0:0:0")).mu == 2


def test_validate_negatives(forest):
    bad = copy.deepcopy(forest)
    _, _, _, v = _vertex(bad, "Y121")
    v.label = Label(1)
    assert any("leaf with label" in m for m in validate_forest(bad))

    bad = copy.deepcopy(forest)
    t = bad.trees[0]
    w, child = t.root.children[0]
    t.root.children[0] = (w + 1, child)
    assert any("Bezout" in m for m in validate_forest(bad))

    bad = copy.deepcopy(forest)
    _, _, _, v = _vertex(bad, "Y12")
    v.label = None
    assert any("children without label" in m for m in validate_forest(bad))

    bad = copy.deepcopy(forest)
    bad.trees[0].root.label.deg = 5
    assert any("exceeds level" in m for m in validate_forest(bad))

    bad = copy.deepcopy(forest)
    _, _, _, v = _vertex(bad, "Y11")
    v.children[0] = (1, TreeVertex(SchemeDescriptor("point", 1, 0, "off", frobenius_orbit(ProjPoint(F5, (0, 0, 1, 0, 0)), F5))))
    assert any("not on the vertex" in m for m in validate_forest(bad))


def test_json_roundtrip(forest):
    data = forest_to_json(forest)
    again = forest_from_json(json.loads(json.dumps(data)))
    assert forest_to_json(again) == data
    assert validate_forest(again) == []
    with pytest.raises(TreeFormatError):
        forest_from_json({"level": 2})


def test_eligibility_not_applicable():
    # a registered vertex without equations that is not asserted eligible
    F = field_create(3)
    P = frobenius_orbit(ProjPoint(F, (1, 0, 0)), F)
    leaf = TreeVertex(SchemeDescriptor("point", 1, 0, "P", P))
    root = TreeVertex(SchemeDescriptor("registered", 2, 1, "Q"), Label(1), [(2, leaf)])
    forest = Forest([IntersectionTree(root, 2, 2, F, 1)], 2, 2, F)
    M = leaf.scheme
    ok, why = eligibility(forest, M)
    assert not ok and "cannot decide" in why
    assert check_descendant_weight(forest, M, 1).status == "not-applicable"
    v = check_descendant_weight(forest, M, 1, eligible={"P"})
    assert v.status == "pass" and v.lhs == 2
    # a vertex containing the point with no descendant occurrence
    other = TreeVertex(SchemeDescriptor("point", 1, 0, "R", frobenius_orbit(ProjPoint(F, (0, 1, 0)), F)))
    root = TreeVertex(SchemeDescriptor("registered", 1, 1, "L", equations=[poly_parse("T2", F, 3)]), Label(1), [(1, other)])
    forest = Forest([IntersectionTree(root, 2, 2, F, 1)], 2, 2, F)
    assert check_descendant_weight(forest, M, 1).status == "not-applicable"


def test_plane_forest_cuspidal_cubic():
    F7 = field_create(7)
    X = HypersurfaceScheme(poly_parse("T1^2*T2 - T0^3", F7, 3))
    pf = build_plane_forest(X)
    assert validate_forest(pf.forest) == []
    assert pf.bezout_total == X.delta * (X.delta - 1)
    cusp = [t for t in pf.forest if str(t.root.scheme.point.representative) == "0:0:1"]
    assert len(cusp) == 1
    assert cusp[0].root.scheme.mu["X"] == 2


def test_plane_forest_smooth_conic():
    X = HypersurfaceScheme(poly_parse("T0*T2 - T1^2", F5, 3))
    assert len(build_plane_forest(X).forest) == 0


def test_plane_forest_local_inequalities():
    from hypmult.harness import CorpusConfig, generate_corpus
    # degrees chosen so that q^(delta(delta-1)) stays within the field-size cap
    for field, degs in (("2", (3, 5)), ("3", (3, 4)), ("5", (3, 3)), ("4", (3, 3))):
        for X in generate_corpus(CorpusConfig(field, 2, degs, 4, 11, True, True)).members:
            pf = build_plane_forest(X)
            assert pf.bezout_total == X.delta * (X.delta - 1)
            for t in pf.forest:
                s = t.root.scheme
                mx, mg = s.mu["X"], s.mu["g1"]
                assert t.root_weight >= mx * mg
                assert mg >= mx - 1
                v = check_descendant_weight(pf.forest, s, mx * mg)
                assert v.status == "pass"
            assert check_root_degree_bound(pf.forest).ok


@given(st.randoms(use_true_random=False))
def test_tree_weight_algebra(rnd):
    props.tree_weight_algebra(random.Random(rnd.random()))


def test_fixture_root_mu_match_generic_multiplicity(forest):
    from hypmult.localmult import generic_multiplicity
    fam = [HypersurfaceScheme(lab.equations[0]) for lab in forest.family]
    for t in forest:
        s = t.root.scheme
        got = [generic_multiplicity(X, s.equations, max_m=1) for X in fam]
        assert got == [s.mu[lab.name] for lab in forest.family]
