"""Exact values on the concurrent-lines cone for a grid of (delta, n, q).

The singular locus is a linear space of dimension n-2 and every singular
rational point has multiplicity delta, so lhs = delta(delta-1)#P^(n-2)(F_q)
and the main bound's rhs can be compared term by term.
"""

import argparse

from hypmult.gf import field_create
from hypmult.harness import cylinder_family_check, main_bound_rhs


def main():
    ap = argparse.ArgumentParser(description="cylinder exact values")
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--max-delta", type=int, default=5)
    a = ap.parse_args()
    print(f"{'delta':>5} {'n':>2} {'q':>2} {'s':>2} {'lhs':>6} {'expected':>8} {'rhs':>6}  ok")
    bad = 0
    for q in a.q:
        F = field_create(*{4: (2, 2), 8: (2, 3), 9: (3, 2)}.get(q, (q, 1)))
        for n in a.n:
            for delta in range(2, min(a.max_delta, q + 1) + 1):
                r = cylinder_family_check(delta, n, F)
                rhs = main_bound_rhs(delta, n, r.s, q)
                bad += not r.ok
                print(f"{delta:>5} {n:>2} {q:>2} {r.s:>2} {r.lhs:>6} {r.expected:>8} {rhs:>6}  {r.ok}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
