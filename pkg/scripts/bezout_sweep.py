"""Random proper pairs of plane curves: Bezout totals and the local bound
i(P) >= mu_P(F) mu_P(G) at every closed intersection point."""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from hypmult.gf import MAX_ORDER, field_create
from hypmult.harness import random_point, singular_form_at
from hypmult.localmult import HypersurfaceScheme, multiplicity_at
from hypmult.mpoly import random_form
from hypmult.plane import bezout_check, is_proper_pair


@dataclass
class BezoutConfig:
    pairs: int = 100
    seed: int = 0
    max_degree: int = 3
    planted_every: int = 2  # every k-th pair shares a singular point


def run(cfg: BezoutConfig) -> int:
    rng = random.Random(cfg.seed)
    fields = [field_create(p, k) for p, k in ((2, 1), (3, 1), (2, 2), (5, 1), (7, 1))]
    done = bad = local_bad = 0
    degrees = Counter()
    while done < cfg.pairs:
        F = rng.choice(fields)
        planted = cfg.planted_every and done % cfg.planted_every == 0
        lo = 2 if planted else 1
        a, b = rng.randint(lo, cfg.max_degree), rng.randint(lo, cfg.max_degree)
        if F.q ** (a * b) > MAX_ORDER:
            continue
        if planted:
            xi = random_point(F, 2, rng)
            f, g = singular_form_at(F, 3, a, xi, rng), singular_form_at(F, 3, b, xi, rng)
        else:
            f, g = random_form(F, 3, a, rng), random_form(F, 3, b, rng)
        if f.is_zero() or g.is_zero() or f.degree != a or g.degree != b or not is_proper_pair(f, g):
            continue
        rep = bezout_check(f, g)
        bad += not rep.ok
        for t in rep.terms:
            degrees[t.point.degree] += 1
            mf = multiplicity_at(HypersurfaceScheme(f), t.point).mu
            mg = multiplicity_at(HypersurfaceScheme(g), t.point).mu
            local_bad += t.mult < mf * mg
        done += 1
    print(f"{done} pairs: {bad} Bezout mismatches, {local_bad} local-bound violations")
    print("closed points by degree:", dict(sorted(degrees.items())))
    return 1 if bad or local_bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-degree", type=int, default=3)
    a = ap.parse_args()
    raise SystemExit(run(BezoutConfig(a.pairs, a.seed, a.max_degree)))
