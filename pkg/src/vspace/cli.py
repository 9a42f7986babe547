"""Command-line front end.

Subcommands:
  check       axioms (plus optional lemma checks) on a stored space
  solve       run one solver on a stored instance
  bench       seeded experiment suite, JSON report out
  tabulate    expand a point-set instance into an explicit table
  hypercube   enumerate interval partitions / run the bijection check
  composite   verify the composite-space construction on a stored space

Every command exits 0 exactly when everything it checked passed, 1 on a
failed check, 2 on bad input. File outputs are byte-identical across
reruns with the same arguments.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algorithms import SolverStall, german_algorithm, swiss_algorithm
from .core import check_axioms, combinatorial_dimension, find_basis, is_nondegenerate
from .harness import (
    composite_experiment,
    ga_experiment,
    sa_experiment,
    verify_sampling_lemma,
    write_report,
    write_trace_csv,
)
from .hypercube import ENUMERATION_LIMIT, enumerate_partitions, partition_payload, roundtrip_check
from .instances import (
    SEB_FORMAT,
    TABLE_FORMAT,
    TABULATE_LIMIT,
    SebSpace,
    load_explicit,
    load_seb,
    save_explicit,
    tabulate,
)
from .subsets import elements


class CliError(Exception):
    pass


def _sniff(path) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise CliError(f"{path}: expected a JSON object with a format tag")
    fmt = payload.get("format")
    if fmt == TABLE_FORMAT:
        return "table"
    if fmt == SEB_FORMAT:
        return "seb"
    raise CliError(f"{path}: unknown format tag {fmt!r}")


def _load_space(path):
    """Space handle suitable for solvers (point instances stay implicit)."""
    if _sniff(path) == "table":
        return load_explicit(path), TABLE_FORMAT
    return SebSpace(load_seb(path)), SEB_FORMAT


def _load_table_space(path):
    """Space with a full table; point instances get tabulated first."""
    if _sniff(path) == "table":
        return load_explicit(path), TABLE_FORMAT
    inst = load_seb(path)
    if inst.n > TABULATE_LIMIT:
        raise CliError(
            f"{path}: {inst.n} points cannot be tabulated (limit {TABULATE_LIMIT})")
    return tabulate(SebSpace(inst), certify=False), SEB_FORMAT


def cmd_check(args) -> int:
    space, origin = _load_table_space(args.file)
    report = check_axioms(space)
    axioms_ok = report.ok
    ok = axioms_ok
    print(f"space: n={space.n} source={origin}")
    print(f"axioms: {'pass' if axioms_ok else 'FAIL'}")
    for ce in report.counterexamples[:4]:
        print(f"  {ce.axiom}: {ce.detail}")

    d = None
    if axioms_ok and (args.sampling_lemma or args.dimension or args.nondegenerate):
        d = combinatorial_dimension(space)
    skipped = "skipped (axioms failed)"
    if args.dimension:
        print(f"dimension: {d if axioms_ok else skipped}")
    if args.sampling_lemma:
        if axioms_ok:
            rep = verify_sampling_lemma(space, d=d)
            print(f"sampling-lemma: {'pass' if rep.ok else 'FAIL'} "
                  f"(identity {'exact' if rep.identity_ok else 'BROKEN'}, "
                  f"corollary at d={d} {'holds' if rep.corollary_ok else 'BROKEN'}, "
                  f"extreme counts <= d: {'yes' if rep.extreme_bound_ok else 'no'})")
            ok = ok and rep.ok
        else:
            print(f"sampling-lemma: {skipped}")
    if args.nondegenerate:
        if axioms_ok:
            flag = is_nondegenerate(space)
            print(f"nondegenerate: {'yes' if flag else 'no'}")
            ok = ok and flag
        else:
            print(f"nondegenerate: {skipped}")
    print(f"overall: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_solve(args) -> int:
    space, _ = _load_space(args.file)
    result = None
    if args.algo == "bfa":
        basis = find_basis(space, space.ground)
    elif args.algo == "ga":
        result = german_algorithm(space, args.seed, inner=args.inner)
        basis = result.basis
    else:
        try:
            result = swiss_algorithm(space, args.seed, c=args.c)
        except SolverStall as stall:
            print("algorithm: sa")
            print(f"stalled: {stall}")
            if args.trace:
                write_trace_csv(args.trace, [(0, stall.trace)])
                print(f"trace: {args.trace}")
            return 1
        basis = result.basis
    v = space.violators(basis)
    print(f"algorithm: {args.algo}")
    names = " ".join(str(e) for e in elements(basis))
    print(f"basis: {names if names else '(empty)'}")
    print(f"basis-size: {basis.bit_count()}")
    print(f"violators-of-basis: {v.bit_count()}")
    if result is not None:
        tr = result.trace
        print(f"rounds: {len(tr.rounds)}  inner-calls: {result.calls}  "
              f"delegated: {'yes' if tr.delegated else 'no'}")
    if args.trace:
        write_trace_csv(args.trace, [(0, result.trace)] if result is not None else [])
        print(f"trace: {args.trace}")
    return 0 if v == 0 else 1


def cmd_bench(args) -> int:
    space, _ = _load_space(args.file)
    if args.algo == "ga":
        report = ga_experiment(space, args.trials, args.seed, inner=args.inner)
    else:
        report = sa_experiment(
            space, args.trials, args.seed, c=args.c, beta=args.beta,
            forever_traces=args.forever_traces,
            forever_rounds=args.forever_rounds,
            weight_checkpoints=args.weight_checkpoints)
    write_report(report, args.out)
    for m in report["metrics"]:
        print(f"{'pass' if m['pass'] else 'FAIL'}  {m['name']}: "
              f"measured={m['measured']} bound={m['bound']}")
    print(f"report: {args.out}")
    print(f"overall: {'pass' if report['pass'] else 'FAIL'}")
    return 0 if report["pass"] else 1


def cmd_tabulate(args) -> int:
    if _sniff(args.file) != "seb":
        raise CliError(f"{args.file}: tabulate expects a point-set instance")
    inst = load_seb(args.file)
    if inst.n > TABULATE_LIMIT:
        raise CliError(f"{args.file}: {inst.n} points exceed the tabulation limit "
                       f"of {TABULATE_LIMIT}")
    space = tabulate(SebSpace(inst), certify=True)
    save_explicit(space, args.out)
    ok = space.axiom_report.ok
    print(f"table: {args.out} (n={space.n}, axioms {'pass' if ok else 'FAIL'})")
    return 0 if ok else 1


def cmd_hc_enumerate(args) -> int:
    if args.n > ENUMERATION_LIMIT:
        raise CliError(f"enumeration refused: n={args.n} exceeds {ENUMERATION_LIMIT}")
    count = 0
    for part in enumerate_partitions(args.n):
        count += 1
        if not args.count_only:
            line = json.dumps(partition_payload(part), sort_keys=True,
                              separators=(",", ":"))
            sys.stdout.write(line + "\n")
    if args.count_only:
        print(count)
    return 0


def cmd_hc_roundtrip(args) -> int:
    if args.n > ENUMERATION_LIMIT:
        raise CliError(f"roundtrip refused: n={args.n} exceeds {ENUMERATION_LIMIT}")
    rep = roundtrip_check(args.n)
    print(f"partitions: {rep.partitions}")
    print(f"axioms on every image: {'pass' if rep.all_axioms else 'FAIL'}")
    print(f"nondegenerate images: {'pass' if rep.all_nondegenerate else 'FAIL'}")
    print(f"pattern regenerates partition: {'pass' if rep.all_roundtrip else 'FAIL'}")
    print(f"distinct tables: {'pass' if rep.injective else 'FAIL'}")
    if rep.table_bijection is not None:
        print(f"full table sweep is a bijection: "
              f"{'pass' if rep.table_bijection else 'FAIL'}")
    print(f"overall: {'pass' if rep.ok else 'FAIL'}")
    return 0 if rep.ok else 1


def cmd_composite(args) -> int:
    space, _ = _load_table_space(args.file)
    report = composite_experiment(space)
    for m in report["metrics"]:
        print(f"{'pass' if m['pass'] else 'FAIL'}  {m['name']}: "
              f"measured={m['measured']} bound={m['bound']}")
    print(f"overall: {'pass' if report['pass'] else 'FAIL'}")
    return 0 if report["pass"] else 1


def _seed_type(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vspace",
        description="violator-space solvers, lemma checks, and benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify the axioms of a stored space")
    c.add_argument("file", help="violator-table or point-set JSON")
    c.add_argument("--sampling-lemma", action="store_true",
                   help="also verify the exact sampling identity and its bounds")
    c.add_argument("--dimension", action="store_true",
                   help="also report the combinatorial dimension")
    c.add_argument("--nondegenerate", action="store_true",
                   help="also require every subset to have a unique basis")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", help="compute a basis of the whole ground set")
    s.add_argument("file")
    s.add_argument("--algo", choices=("bfa", "ga", "sa"), required=True)
    s.add_argument("--inner", choices=("bfa", "sa"), default="bfa",
                   help="inner solver for --algo ga")
    s.add_argument("--seed", type=_seed_type, required=True)
    s.add_argument("--c", type=float, default=2.0,
                   help="sample-size multiplier for --algo sa (r = ceil(c d^2))")
    s.add_argument("--trace", metavar="CSV",
                   help="write the per-round trace to this file")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="seeded trials against the analytic bounds")
    b.add_argument("file")
    b.add_argument("--algo", choices=("ga", "sa"), required=True)
    b.add_argument("--trials", type=_positive, required=True)
    b.add_argument("--seed", type=_seed_type, required=True)
    b.add_argument("--inner", choices=("bfa", "sa"), default="bfa")
    b.add_argument("--c", type=float, default=2.0)
    b.add_argument("--beta", type=float, default=2.0)
    b.add_argument("--forever-traces", type=_nonneg, default=0,
                   help="fixed-length instrumented runs for the tail estimate")
    b.add_argument("--forever-rounds", type=_nonneg, default=0)
    b.add_argument("--weight-checkpoints", type=_nonneg, default=0,
                   help="check mean total weight at rounds d, 2d, ..., kd")
    b.add_argument("--out", required=True, metavar="JSON")
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("tabulate", help="expand a point-set instance into a table")
    t.add_argument("file")
    t.add_argument("-o", "--out", required=True)
    t.set_defaults(func=cmd_tabulate)

    h = sub.add_parser("hypercube", help="interval partitions of the subset lattice")
    hsub = h.add_subparsers(dest="hc_command", required=True)
    he = hsub.add_parser("enumerate", help="print every partition, one JSON per line")
    he.add_argument("--n", type=_nonneg, required=True)
    he.add_argument("--count-only", action="store_true")
    he.set_defaults(func=cmd_hc_enumerate)
    hr = hsub.add_parser("roundtrip", help="verify the partition/space bijection")
    hr.add_argument("--n", type=_nonneg, required=True)
    hr.set_defaults(func=cmd_hc_roundtrip)

    comp = sub.add_parser("composite", help="verify the composite-space construction")
    comp.add_argument("file")
    comp.set_defaults(func=cmd_composite)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
