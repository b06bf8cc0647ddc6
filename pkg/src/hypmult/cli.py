"""Command-line interface.  Exit codes: 0 all checks pass, 1 an inequality
is violated, 2 input or usage error."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .gf import FieldError, parse_field_spec
from .geom import gaussian_count, parse_point
from .mpoly import PolyParseError, format_poly, poly_parse

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_poly(arg: str, field, arity: int):
    text = arg
    if os.path.isfile(arg):
        with open(arg) as fh:
            text = fh.read().strip()
    return poly_parse(text, field, arity)


def _field(args):
    return parse_field_spec(args.field)


def cmd_mult(args) -> int:
    from .localmult import HypersurfaceScheme, multiplicity_at, multiplicity_via_derived

    F = _field(args)
    X = HypersurfaceScheme(_read_poly(args.poly, F, args.n + 1))
    P = parse_point(args.point, F)
    a = multiplicity_at(X, P).mu
    b = multiplicity_via_derived(X, P).mu
    print(f"mu = {a}")
    print(f"translation: {a}")
    print(f"derived-order: {b}")
    return EXIT_OK if a == b else EXIT_VIOLATION


def cmd_hilbert_samuel(args) -> int:
    from .localmult import hilbert_samuel

    print(hilbert_samuel(args.N, args.R, args.S))
    return EXIT_OK


def cmd_singdim(args) -> int:
    from .ideals import singular_locus
    from .localmult import HypersurfaceScheme

    F = _field(args)
    sl = singular_locus(HypersurfaceScheme(_read_poly(args.poly, F, args.n + 1)))
    print(f"s = {sl.dim}")
    print(f"groebner basis size = {sl.basis_size}")
    if sl.all_partials_zero:
        print("warning: all partials vanish identically (everywhere singular, not reduced)")
    return EXIT_OK


def cmd_reduced(args) -> int:
    from .ideals import is_reduced
    from .localmult import HypersurfaceScheme

    F = _field(args)
    v = is_reduced(HypersurfaceScheme(_read_poly(args.poly, F, args.n + 1)))
    print(f"reduced = {str(v.reduced).lower()}")
    print(f"reason: {v.reason}")
    return EXIT_OK


def cmd_tree(args) -> int:
    from .itree import TreeFormatError, check_descendant_weight, load_forest, mu_product, validate_forest

    try:
        forest = load_forest(args.file)
    except (OSError, json.JSONDecodeError, TreeFormatError, PolyParseError, FieldError, ValueError) as e:
        raise UsageError(f"cannot load tree file: {e}") from None
    if args.tree_cmd == "validate":
        violations = validate_forest(forest)
        for v in violations:
            print(f"violation: {v}")
        print(f"{len(violations)} violation(s)")
        return EXIT_VIOLATION if violations else EXIT_OK
    try:
        M = forest.find(args.target)
    except KeyError as e:
        raise UsageError(str(e)) from None
    k = args.mu_product if args.mu_product is not None else mu_product(forest, M)
    v = check_descendant_weight(forest, M, k)
    print(f"status = {v.status}")
    if v.lhs is not None:
        print(f"lhs = {v.lhs}")
        print(f"rhs = {v.rhs}")
    if v.reason:
        print(f"reason: {v.reason}")
    return EXIT_VIOLATION if v.status == "fail" else EXIT_OK


def cmd_verify_bound(args) -> int:
    from .harness import verify_main_bound
    from .localmult import HypersurfaceScheme

    F = _field(args)
    rep = verify_main_bound(HypersurfaceScheme(_read_poly(args.poly, F, args.n + 1)))
    if args.json:
        print(rep.dumps())
    else:
        print(f"delta = {rep.delta}, n = {rep.n}, q = {rep.q}, s = {rep.s}")
        print(f"lhs = {rep.lhs}")
        print(f"rhs = {rep.rhs}")
        print(f"ratio = {rep.ratio}")
        for p, mu in rep.per_point:
            print(f"  [{p}] mu = {mu}")
        print("ok" if rep.ok else "VIOLATION: lhs exceeds rhs")
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_corpus(args) -> int:
    from .harness import CorpusConfig, generate_corpus, save_corpus

    cfg = CorpusConfig(args.field, args.n, (args.delta, args.delta), args.count, args.seed,
                       force_singular_point=args.singular_point)
    corpus = generate_corpus(cfg)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "corpus.json")
    save_corpus(corpus, path)
    for i, X in enumerate(corpus.members):
        with open(os.path.join(args.out, f"member_{i:04d}.poly"), "w") as fh:
            fh.write(format_poly(X.f) + "\n")
    print(f"wrote {len(corpus.members)} members to {args.out} ({corpus.rejected} rejected)")
    return EXIT_OK


def cmd_cylinder(args) -> int:
    from .harness import cylinder_family_check

    r = cylinder_family_check(args.delta, args.n, _field(args))
    print(f"s = {r.s} (expected {r.n - 2})")
    print(f"lhs = {r.lhs} (expected {r.expected})")
    print(f"singular rational points = {r.singular_points} (expected {r.expected_singular_points})")
    print(f"multiplicities = {sorted(r.mus)}")
    print("ok" if r.ok else "MISMATCH")
    return EXIT_OK if r.ok else EXIT_VIOLATION


def cmd_fulton(args) -> int:
    from .harness import fulton_check
    from .localmult import HypersurfaceScheme

    r = fulton_check(HypersurfaceScheme(_read_poly(args.poly, _field(args), 3)), args.closed_points)
    print(f"sum over rational points = {r.rational_sum}")
    if r.closed_sum is not None:
        print(f"sum over closed points = {r.closed_sum}")
    print(f"bound = {r.bound}")
    print("ok" if r.ok else "VIOLATION")
    return EXIT_OK if r.ok else EXIT_VIOLATION


def cmd_bezout(args) -> int:
    from .plane import bezout_check

    F = _field(args)
    r = bezout_check(_read_poly(args.poly1, F, 3), _read_poly(args.poly2, F, 3))
    for t in r.terms:
        print(f"  {t.point}: i = {t.mult}, deg = {t.point.degree}")
    print(f"sum i*deg = {r.total}, deg1*deg2 = {r.expected}")
    print("ok" if r.ok else "MISMATCH")
    return EXIT_OK if r.ok else EXIT_VIOLATION


def cmd_grassmann(args) -> int:
    print(gaussian_count(args.R, args.N, args.Q))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypmult", description="Multiplicities on hypersurfaces over finite fields")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, n=True):
        p.add_argument("--field", required=True, help='field spec, "p" or "p^k"')
        if n:
            p.add_argument("--n", type=int, required=True, help="projective dimension")

    p = sub.add_parser("mult", help="multiplicity of a point (both algorithms)")
    common(p)
    p.add_argument("--poly", required=True, help="polynomial file or literal")
    p.add_argument("--point", required=True, help='"a0:a1:...:an"')
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("hilbert-samuel", help="local Hilbert-Samuel function value")
    for a in ("N", "R", "S"):
        p.add_argument(a, type=int)
    p.set_defaults(func=cmd_hilbert_samuel)

    for name, fn, hlp in (("singdim", cmd_singdim, "singular locus dimension"),
                          ("reduced", cmd_reduced, "reducedness verdict")):
        p = sub.add_parser(name, help=hlp)
        common(p)
        p.add_argument("--poly", required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("tree", help="intersection tree files")
    tsub = p.add_subparsers(dest="tree_cmd", required=True)
    tv = tsub.add_parser("validate")
    tv.add_argument("file")
    tv.set_defaults(func=cmd_tree)
    tc = tsub.add_parser("descendant-weight", help="descendant-weight inequality at a target scheme")
    tc.add_argument("file")
    tc.add_argument("--target", required=True, help="scheme name in the tree file")
    tc.add_argument("--mu-product", type=int, default=None,
                    help="product of multiplicities (computed from the family if omitted)")
    tc.set_defaults(func=cmd_tree)

    p = sub.add_parser("verify-bound", help="check the multiplicity-sum bound on one hypersurface")
    common(p)
    p.add_argument("--poly", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_bound)

    p = sub.add_parser("corpus", help="generate a seeded corpus of reduced hypersurfaces")
    common(p)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--singular-point", default=None, help="plant a singular point at this rational point")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("cylinder", help="exact values on the concurrent-lines cone")
    common(p)
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_cylinder)

    p = sub.add_parser("fulton", help="sum of mu(mu-1) on a plane curve")
    common(p, n=False)
    p.add_argument("--poly", required=True)
    p.add_argument("--closed-points", action="store_true")
    p.set_defaults(func=cmd_fulton)

    p = sub.add_parser("bezout", help="intersection numbers of two plane curves")
    common(p, n=False)
    p.add_argument("--poly1", required=True)
    p.add_argument("--poly2", required=True)
    p.set_defaults(func=cmd_bezout)

    p = sub.add_parser("grassmann", help="number of R-dim subspaces of F_Q^N")
    for a in ("R", "N", "Q"):
        p.add_argument(a, type=int)
    p.set_defaults(func=cmd_grassmann)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, PolyParseError, FieldError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
