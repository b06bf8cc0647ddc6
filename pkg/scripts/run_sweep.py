"""Main-bound sweep over the (n, q, delta) grid.

Writes one BoundReport per line to a JSONL file and prints a summary with the
largest lhs/rhs ratios.

    python3 scripts/run_sweep.py --count 200 --planted 50 --out sweep.jsonl
"""

import argparse
import json
import time
from dataclasses import dataclass
from fractions import Fraction

from hypmult.harness import sweep_corpus, verify_main_bound


@dataclass
class SweepConfig:
    count: int = 200
    planted: int = 50
    seed: int = 7
    planted_seed: int = 8
    out: str = "sweep.jsonl"


def run(cfg: SweepConfig) -> int:
    t0 = time.perf_counter()
    members = [(X, False) for X in sweep_corpus(cfg.count, cfg.seed)]
    members += [(X, True) for X in sweep_corpus(cfg.planted, cfg.planted_seed, planted=True)]
    reports = []
    with open(cfg.out, "w") as fh:
        for X, planted in members:
            rep = verify_main_bound(X)
            d = rep.to_json()
            d["planted"] = planted
            fh.write(json.dumps(d, sort_keys=True) + "\n")
            reports.append(rep)
    bad = [r for r in reports if not r.ok]
    print(f"{len(reports)} hypersurfaces, {len(bad)} violations, {time.perf_counter() - t0:.1f}s")
    tight = sorted((r for r in reports if r.rhs), key=lambda r: Fraction(r.lhs, r.rhs), reverse=True)[:5]
    for r in tight:
        print(f"  n={r.n} q={r.q} delta={r.delta} s={r.s} lhs/rhs = {r.lhs}/{r.rhs}  {r.poly}")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--planted", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--planted-seed", type=int, default=8)
    ap.add_argument("--out", default="sweep.jsonl")
    a = ap.parse_args()
    raise SystemExit(run(SweepConfig(a.count, a.planted, a.seed, a.planted_seed, a.out)))
