import itertools

import pytest

from hypmult.gf import embed_build, extension, field_create
from hypmult.geom import (
    BudgetExceeded, DescentView, ProjPoint, enum_proj, frobenius_orbit, gaussian_count, parse_point,
    proj_count, rational_points, rational_points_descent, subspaces_bruteforce,
)
from hypmult.localmult import HypersurfaceScheme, multiplicity_at
from hypmult.mpoly import poly_parse

F2, F3, F5 = field_create(2), field_create(3), field_create(5)


def test_enum_examples():
    assert len(list(enum_proj(2, F2))) == 7
    assert [P.coords for P in enum_proj(1, F3)] == [(1, 0), (1, 1), (1, 2), (0, 1)]
    assert len(list(enum_proj(3, F5))) == 156


@pytest.mark.parametrize("n,pk", [(1, (2, 1)), (2, (3, 1)), (3, (2, 1)), (2, (2, 2)), (2, (3, 2)), (4, (2, 1))])
def test_enum_complete_and_normalized(n, pk):
    F = field_create(*pk)
    pts = [P.coords for P in enum_proj(n, F)]
    assert len(pts) == len(set(pts)) == proj_count(n, F.q) == gaussian_count(1, n + 1, F.q)
    for c in pts:
        assert next(x for x in c if x) == 1
    # every nonzero vector is a scalar multiple of exactly one listed point
    seen = set()
    for v in itertools.product(range(F.q), repeat=n + 1):
        if any(v):
            seen.add(ProjPoint(F, v).coords)
    assert seen == set(pts)


def test_enum_budget():
    with pytest.raises(BudgetExceeded):
        enum_proj(4, F5, budget=100)


def test_gaussian_examples():
    assert gaussian_count(1, 2, 3) == 4
    assert all(gaussian_count(n, n, q) == 1 for n in range(5) for q in (2, 3, 4))
    assert gaussian_count(1, 3, 2) == 7
    with pytest.raises(ValueError):
        gaussian_count(3, 2, 2)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gaussian_vs_bruteforce(q, n):
    for r in range(n + 1):
        assert gaussian_count(r, n, q) == subspaces_bruteforce(r, n, q)


def test_frobenius_orbits():
    F9 = field_create(3, 2)
    P = ProjPoint(F9, (1, 2))
    assert frobenius_orbit(P, F3).degree == 1
    g = 3  # class of x in F_9
    cp = frobenius_orbit(ProjPoint(F9, (1, g)), F3)
    assert cp.degree == 2
    assert {Q.coords for Q in cp.orbit} == {(1, g), (1, F9.pow(g, 3))}
    F64 = field_create(2, 6)
    F2 = field_create(2)
    for a in range(64):
        cp = frobenius_orbit(ProjPoint(F64, (1, a, 1)), F2)
        assert 6 % cp.degree == 0
        for Q in cp.orbit:
            assert Q.frobenius(1) in cp.orbit


def test_parse_point():
    P = parse_point("0:2:0", F5)
    assert P.coords == (0, 1, 0)
    F9 = field_create(3, 2)
    assert parse_point("1:[0,1]", F9).coords == (1, 3)
    with pytest.raises(ValueError):
        parse_point("0:0", F5)
    with pytest.raises(ValueError):
        parse_point("1:x", F5)


def test_descent_examples():
    # over the base field itself
    f = poly_parse("T0*T1 - T2^2", F3, 3)
    view = DescentView([f], embed_build(F3, F3))
    assert {P.coords for P in rational_points_descent(view)} == {P.coords for P in rational_points(f)}
    # x^2 - 2y^2 on P^1 over F_5: 2 is a non-square, no F_5 points, but points over F_25
    g = poly_parse("T0^2 - 2*T1^2", F5, 2)
    assert rational_points(g) == []
    big, emb = extension(F5, 2)
    gb = g.map_coeffs(emb)
    assert rational_points_descent(DescentView([gb], emb)) == []
    assert len(rational_points(gb)) == 2


def test_descent_is_base_points_on_big_variety():
    big, emb = extension(F3, 2)
    f = poly_parse("T0^3 + T1^2*T2 - T2^3", F3, 3).map_coeffs(emb)
    f = f + poly_parse("[0,1]*T0*T1*T2", big, 3)  # not defined over F_3
    view = DescentView([f], emb)
    got = rational_points_descent(view)
    expect = [P.map(emb) for P in enum_proj(2, F3) if f.eval(P.map(emb).coords) == 0]
    assert got == expect
    assert len(got) <= f.degree * proj_count(1, 3)


def test_multiplicity_constant_on_orbits():
    # four lines over F_4 meeting in conjugate nodes [w:w':1]
    f = poly_parse("T0^2*T1^2 + T0^2*T1*T2 + T0^2*T2^2 + T0*T1^2*T2 + T0*T1*T2^2 + T0*T2^3"
                   " + T1^2*T2^2 + T1*T2^3 + T2^4", F2, 3)
    X = HypersurfaceScheme(f)
    big = field_create(2, 4)
    seen = set()
    for P in rational_points(X.over(big).f):
        cp = frobenius_orbit(P, F2)
        mus = {multiplicity_at(X, Q).mu for Q in cp.orbit}
        assert len(mus) == 1
        seen.add((cp.degree, mus.pop()))
    assert (2, 2) in seen
