"""Command-line front end: family dumps, verification suites, count
campaigns, and height scans, with machine-readable reports.

Exit codes: 0 all checks pass; 2 mismatch or failed check; 3 inapplicable
gates only (nothing asserted); 4 budget exceeded; 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .count import (
    DEFAULT_BUDGET,
    count_family,
    count_custom,
    count_y0_structure,
    prime_power,
)
from .domains import QQ, field_create
from .families import (
    FAMILY_BUILDERS,
    build_char_two_maps,
    build_ideal,
    build_line_pencil,
    build_x,
    build_x_d_delta,
)
from .heights import DIRECT_BOUND_MAX, height_scan
from .mpoly import MPoly, VarContext
from .reporting import BudgetExceeded, to_csv, to_json
from .verify import (
    run_all_checks,
    verify_composition,
    verify_composition_numeric,
    verify_cox_grading,
    verify_galois_symmetry,
    verify_line_factorization,
    verify_linear_system_dim,
    verify_membership,
    verify_singular_locus,
)

IDEAL_LABELS = ("Hpm", "Z", "Zpm", "Y", "T", "U")


def _write_output(text, path):
    if path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 5
    return 0


def _emit(records, config, fmt, out):
    if fmt == "json":
        text = to_json(records, config)
    elif fmt == "csv":
        text = to_csv(records)
    else:
        lines = []
        for r in records:
            lines.append(r.line() if hasattr(r, "line") else json.dumps(r, sort_keys=True, default=str))
        text = "\n".join(lines) + "\n"
    return _write_output(text, out)


def _config_of(args):
    skip = {"func"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    cfg["version"] = __version__
    return cfg


# ---------------------------------------------------------------------------
# families dump


def _cmd_families_dump(args):
    char = args.char
    name = args.family
    if name in IDEAL_LABELS:
        dom = QQ if char == 0 else field_create(*prime_power(char))
        ig = build_ideal(args.n, args.d, name, dom)
        return _write_output(ig.to_text() + "\n", args.out)
    if char == 2:
        F = field_create(2)
        if name in ("char2", "g"):
            data = build_char_two_maps(args.n, args.d, F)
            lines = [f"P = {data['P'].to_text()}", f"Q = {data['Q'].to_text()}",
                     data["g"].to_text()]
            return _write_output("\n".join(lines) + "\n", args.out)
        if name == "X":
            return _write_output(f"X = {build_x(args.n, args.d, F).to_text()}\n", args.out)
        print(f"error: family {name!r} has no char-2 constructor; use the char2 family",
              file=sys.stderr)
        return 5
    if char != 0:
        F = field_create(*prime_power(char))
        if name == "X":
            return _write_output(f"X = {build_x(args.n, args.d, F).to_text()}\n", args.out)
        print(f"error: only the hypersurface itself dumps over char {char}; "
              "maps are characteristic-0 constructions", file=sys.stderr)
        return 5
    if name == "Xdelta":
        if args.delta is None:
            print("error: --delta required for Xdelta", file=sys.stderr)
            return 5
        f = build_x_d_delta(args.n, args.d, args.delta)
        return _write_output(f"Xdelta = {f.to_text()}\n", args.out)
    if name == "pencil":
        data = build_line_pencil(args.n, args.d)
        lines = [f"L[{i}] = {L.to_text()}" for i, L in enumerate(data["lines"])]
        lines.append(f"F = {data['F'].to_text()}")
        return _write_output("\n".join(lines) + "\n", args.out)
    builder = FAMILY_BUILDERS.get(name)
    if builder is None:
        print(f"error: unknown family {name!r}", file=sys.stderr)
        return 5
    pieces = builder(args.n, args.d)
    text = "\n".join(f"{label} = {poly.to_text()}" for label, poly in pieces)
    return _write_output(text + "\n", args.out)


# ---------------------------------------------------------------------------
# verify


def _run_single_check(name, n, d, seed):
    from .families import (build_alpha_beta, build_cremona, build_h,
                           build_phibar, build_theta)
    from .mpoly import compose

    if name == "line_factorization":
        return [verify_line_factorization(n, d)]
    if name == "membership":
        return [verify_membership(build_phibar(n, d), build_x(n, d))]
    if name == "composition_cremona":
        cr, cr_inv = build_cremona()
        return [verify_composition(cr, cr_inv)]
    if name == "composition_alphabeta":
        alpha, beta = build_alpha_beta(n)
        return [verify_composition(alpha, beta)]
    if name == "composition_on_x":
        h_theta = compose(build_h(n), build_theta(n))
        h_theta.name = "h.theta"
        return [verify_composition(h_theta, build_phibar(n, d),
                                   modulo=build_x(n, d), field=field_create(1009),
                                   seed=seed)]
    if name == "composition_roundtrip":
        h_theta = compose(build_h(n), build_theta(n))
        h_theta.name = "h.theta"
        return [verify_composition_numeric(build_phibar(n, d), h_theta,
                                           field_create(1009), trials=100, seed=seed)]
    if name == "composition_roundtrip_char2":
        F32 = field_create(2, 5)
        data = build_char_two_maps(n, d, F32)
        return [verify_composition_numeric(data["g"], build_theta(n, F32), F32,
                                           trials=100, seed=seed)]
    if name == "singular_locus":
        if n < 2:
            print("error: singular_locus needs n >= 2 (violated gate: locus empty at n = 1)",
                  file=sys.stderr)
            return None
        return [verify_singular_locus(n, d, samples=50, seed=seed)]
    if name == "linear_system_dim":
        return [verify_linear_system_dim(n, d)]
    if name == "galois":
        return [verify_galois_symmetry(n, d)]
    if name == "galois_generalized":
        return [verify_galois_symmetry(n, d, generalized=True)]
    if name == "cox_grading":
        return [verify_cox_grading(n, d)]
    print(f"error: unknown check {name!r}", file=sys.stderr)
    return None


def _cmd_verify(args):
    try:
        if args.check == "all":
            records = run_all_checks(args.n, args.d, seed=args.seed)
        else:
            records = _run_single_check(args.check, args.n, args.d, args.seed)
            if records is None:
                return 5
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 4
    rc = _emit(records, _config_of(args), args.format, args.out)
    if rc:
        return rc
    return 0 if all(r.passed for r in records) else 2


# ---------------------------------------------------------------------------
# count


def _load_custom_polys(path, F):
    with open(path) as fh:
        doc = json.load(fh)
    ctx = VarContext(doc["vars"])
    polys = []
    for rows in doc["polys"]:
        terms = {}
        for coeff, exps in rows:
            terms[tuple(exps)] = F.from_int(coeff)
        polys.append(MPoly(ctx, F, terms))
    return polys


def _cmd_count(args):
    try:
        p, m = prime_power(args.q)
        F = field_create(p, m)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    try:
        if args.family == "Y0":
            breakdown = count_y0_structure(args.d, F)
            rc = _emit([breakdown], _config_of(args), args.format, args.out)
            if rc:
                return rc
            return 0 if breakdown["match"] else 2
        if args.family == "custom":
            if args.poly_file is None:
                print("error: --poly-file required for custom counts", file=sys.stderr)
                return 5
            polys = _load_custom_polys(args.poly_file, F)
            report = count_custom(polys, F, shards=args.shards, budget=args.budget)
        else:
            report = count_family(args.family, args.n, args.d, F, delta=args.delta,
                                  shards=args.shards, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 4
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    rc = _emit([report], _config_of(args), args.format, args.out)
    if rc:
        return rc
    if report.match is None:
        return 3
    return 0 if report.match else 2


# ---------------------------------------------------------------------------
# heights


def _cmd_heights(args):
    if args.n != 1:
        print("error: height scans support n = 1 only (P^3 search space)", file=sys.stderr)
        return 5
    try:
        records = height_scan(args.d, args.bound, mode=args.mode, shards=args.shards)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 4
    if args.format == "text":
        lines = []
        for r in records:
            lines.append(f"B={r.bound} direct={r.direct} param={r.parametrized} "
                         f"lower~{r.lower_ref:.2f} lower_n1~{r.lower_ref_n1:.2f} "
                         f"upper~{r.upper_ref:.0f}")
        return _write_output("\n".join(lines) + "\n", args.out)
    return _emit(records, _config_of(args), args.format, args.out)


# ---------------------------------------------------------------------------
# parser


def _add_common(p, with_nd=True):
    if with_nd:
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--d", type=int, default=1)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="skewplanes",
        description="Exact constructions, identity verification, point counts, "
                    "and height scans for a family of rational hypersurfaces.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("families", help="construct and print the families")
    famsub = fam.add_subparsers(dest="action", required=True)
    dump = famsub.add_parser("dump", help="print a family in canonical text form")
    dump.add_argument("--family", required=True)
    dump.add_argument("--delta", type=int, default=None)
    dump.add_argument("--char", type=int, default=0)
    _add_common(dump)
    dump.set_defaults(func=_cmd_families_dump)

    ver = sub.add_parser("verify", help="run symbolic/numeric identity checks")
    ver.add_argument("--check", default="all")
    _add_common(ver)
    ver.set_defaults(func=_cmd_verify)

    cnt = sub.add_parser("count", help="brute-force counts vs closed formulas")
    cnt.add_argument("--family", required=True,
                     choices=("X", "Y", "Xdelta", "Y0", "custom"))
    cnt.add_argument("--q", type=int, required=True)
    cnt.add_argument("--delta", type=int, default=None)
    cnt.add_argument("--poly-file", default=None)
    _add_common(cnt)
    cnt.set_defaults(func=_cmd_count)

    hts = sub.add_parser("heights", help="bounded-height point counts (n = 1)")
    hts.add_argument("--bound", type=int, required=True)
    hts.add_argument("--mode", choices=("direct", "param", "both"), default="both")
    _add_common(hts)
    hts.set_defaults(func=_cmd_heights)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
