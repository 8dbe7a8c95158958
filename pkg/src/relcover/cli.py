"""Command line front end.

Subcommands: eval, count, bench, bounds, gen, paths, search-nonmonotone.
Tabular output is CSV with a fixed header; --pretty renders the same rows
as aligned text.  Exit codes: 0 success, 1 input or validation error,
2 a cap or timeout stopped the run.

Environment overrides: RELCOVER_CAP_TERMS replaces the default exact-method
term cap, RELCOVER_TIMEOUT_SECONDS the default benchmark budget.  Explicit
flags beat the environment.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path
from typing import Sequence

from .bench import rows_to_csv, run_bench
from .bounds import (
    SearchConfig,
    bound_summary,
    exact_union_probability,
    nonmonotonicity_search,
)
from .errors import CapExceeded, EvaluationTimeout, GenerationError, InvalidSystemError
from .evaluate import (
    DEFAULT_TERM_CAP,
    Method,
    reliability_classical,
    reliability_monte_carlo,
    reliability_simplified,
)
from .combinatorics import count_terms_classical, count_terms_simplified
from .network import minimal_paths
from .system import (
    FamilyShape,
    Implementation,
    SystemSpec,
    dumps_system,
    generate_random_system,
    load_system,
    save_system,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; here malformed input is exit 1.
    def error(self, message):
        raise _UsageError(message)


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    return float(raw) if raw else default


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _term_cap(args) -> int | None:
    if args.cap_terms is not None:
        return args.cap_terms if args.cap_terms > 0 else None
    return _env_int("RELCOVER_CAP_TERMS", DEFAULT_TERM_CAP)


def _parse_sizes(n: int, raw: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(tok) for tok in raw.split(","))
    except ValueError as exc:
        raise _UsageError(f"malformed size list {raw!r}") from exc
    if len(sizes) != n:
        raise _UsageError(f"expected {n} sizes, got {len(sizes)} in {raw!r}")
    if any(t < 1 for t in sizes):
        raise _UsageError("every size must be at least 1")
    return sizes


def _parse_shape_token(token: str) -> tuple[str, tuple[int, ...]]:
    # "3x3" reads as 3 functions with 3 implementations each;
    # "2,3,2" reads as explicit per-function sizes.
    try:
        if "x" in token:
            n, t = token.split("x")
            sizes = (int(t),) * int(n)
        else:
            sizes = tuple(int(tok) for tok in token.split(","))
    except ValueError as exc:
        raise _UsageError(f"malformed shape {token!r}") from exc
    if not sizes or any(t < 1 for t in sizes):
        raise _UsageError(f"malformed shape {token!r}")
    return token, sizes


def _shape_label(sizes: Sequence[int]) -> str:
    return "x".join(str(t) for t in sizes)


def _emit_table(header: Sequence[str], rows: Sequence[Sequence[str]], pretty: bool) -> None:
    if pretty:
        for row in rows:
            for key, value in zip(header, row):
                print(f"{key:>22}: {value}")
            print()
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())


def cmd_eval(args) -> int:
    spec = load_system(args.file)
    cap = _term_cap(args)
    method = Method(args.method.replace("-", "_"))
    if method is Method.SIMPLIFIED:
        report = reliability_simplified(spec, cap_terms=cap)
    elif method is Method.CLASSICAL:
        report = reliability_classical(
            spec, cap_terms=cap, budget_seconds=args.timeout
        )
    else:
        report = reliability_monte_carlo(spec, samples=args.samples, seed=args.seed)
    header = (
        "method",
        "shape",
        "reliability",
        "term_count",
        "distinct_products",
        "wall_time_seconds",
        "standard_error",
    )
    row = (
        method.value,
        _shape_label(spec.shape.sizes),
        f"{report.reliability:.15g}",
        str(report.term_count),
        str(report.distinct_product_count),
        f"{report.wall_time:.6f}",
        "" if report.standard_error is None else f"{report.standard_error:.6g}",
    )
    _emit_table(header, [row], args.pretty)
    return 0


def cmd_count(args) -> int:
    sizes = _parse_sizes(args.functions, args.sizes)
    shape = FamilyShape(sizes)
    header = ("functions", "shape", "terms_classical", "terms_simplified")
    row = (
        str(shape.n),
        _shape_label(sizes),
        str(count_terms_classical(shape)),
        str(count_terms_simplified(shape)),
    )
    _emit_table(header, [row], args.pretty)
    return 0


def cmd_bench(args) -> int:
    shapes = [_parse_shape_token(token) for token in args.shapes]
    timeout = (
        args.timeout
        if args.timeout is not None
        else _env_float("RELCOVER_TIMEOUT_SECONDS", 400.0)
    )
    if args.out:
        instance_dir = Path(args.out).with_suffix("").as_posix() + "_instances"
    else:
        instance_dir = "bench_instances"
    rows = run_bench(
        shapes,
        components=args.components,
        sharing=args.sharing,
        seed=args.seed,
        timeout=timeout,
        instance_dir=instance_dir,
    )
    text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out} and instances under {instance_dir}", file=sys.stderr)
    if args.pretty:
        reader = csv.reader(io.StringIO(text))
        table = list(reader)
        _emit_table(table[0], table[1:], pretty=True)
    elif not args.out:
        sys.stdout.write(text)
    return 0


def cmd_bounds(args) -> int:
    spec = load_system(args.file)
    summary = bound_summary(spec)
    exact = exact_union_probability(spec)
    ok = summary.bound_full <= exact + 1e-12
    header = (
        "name",
        "s1",
        "s2",
        "theta",
        "bound_full",
        "bound_relaxed",
        "exact_reliability",
        "bound_le_exact",
        "claimed_reliability",
        "claimed_lower_bound",
    )
    claimed_rel = spec.claimed.get("claimed_reliability")
    claimed_lb = spec.claimed.get("claimed_lower_bound")
    row = (
        spec.name,
        f"{summary.s1:.15g}",
        f"{summary.s2:.15g}",
        f"{summary.theta:.15g}",
        f"{summary.bound_full:.15g}",
        f"{summary.bound_relaxed:.15g}",
        f"{exact:.15g}",
        "yes" if ok else "no",
        "" if claimed_rel is None else f"{claimed_rel:.15g}",
        "" if claimed_lb is None else f"{claimed_lb:.15g}",
    )
    _emit_table(header, [row], args.pretty)
    return 0


def cmd_gen(args) -> int:
    sizes = _parse_sizes(args.functions, args.sizes)
    spec = generate_random_system(
        FamilyShape(sizes),
        components=args.components,
        sharing=args.sharing,
        seed=args.seed,
        max_impl_size=args.max_impl_size,
    )
    if args.out:
        save_system(spec, args.out)
    else:
        sys.stdout.write(dumps_system(spec))
    return 0


def cmd_paths(args) -> int:
    spec = load_system(args.file)
    if spec.network is None:
        raise ValueError(f"{args.file}: no network block to derive paths from")
    functions = []
    for i in range(len(spec.network.terminals)):
        sets = minimal_paths(spec.network, i)
        if not sets:
            src, sink = spec.network.terminals[i]
            print(
                f"warning: terminal pair {i} ({src} -> {sink}) is unreachable; "
                "a function with no implementations is not a valid system",
                file=sys.stderr,
            )
            return 1
        functions.append(
            tuple(
                Implementation(i, j, s, label=f"P{i + 1}.{j + 1}")
                for j, s in enumerate(sets)
            )
        )
    derived = SystemSpec(
        name=spec.name,
        components=spec.components,
        functions=tuple(functions),
        network=spec.network,
        claimed=dict(spec.claimed),
    )
    if args.out:
        save_system(derived, args.out)
    else:
        sys.stdout.write(dumps_system(derived))
    return 0


def cmd_search(args) -> int:
    config = SearchConfig(
        events=args.events,
        components=args.components,
        sharing=args.sharing,
        max_impl_size=args.max_impl_size,
    )
    witnesses = nonmonotonicity_search(config, trials=args.trials, seed=args.seed)
    header = (
        "trial",
        "reliability_low",
        "reliability_high",
        "bound_low",
        "bound_high",
    )
    rows = [
        (
            str(w.trial),
            f"{w.reliability_low:.15g}",
            f"{w.reliability_high:.15g}",
            f"{w.bound_low:.15g}",
            f"{w.bound_high:.15g}",
        )
        for w in witnesses
    ]
    _emit_table(header, rows, args.pretty)
    if args.out and witnesses:
        first = witnesses[0]
        low_path = f"{args.out}.low.json"
        high_path = f"{args.out}.high.json"
        save_system(first.low, low_path)
        save_system(first.high, high_path)
        print(f"wrote {low_path} and {high_path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="relcover", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--csv", action="store_true", help="CSV output (default)")
        group.add_argument("--pretty", action="store_true", help="aligned text output")

    p = sub.add_parser("eval", help="evaluate a system file")
    p.add_argument("file")
    p.add_argument(
        "--method",
        choices=["classical", "simplified", "monte-carlo"],
        default="simplified",
    )
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout", type=float, default=None)
    p.add_argument("--cap-terms", type=int, default=None, help="0 disables the cap")
    add_output_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("count", help="term-count predictors for a shape")
    p.add_argument("functions", type=int)
    p.add_argument("sizes", help="comma-separated t_i list, one per function")
    add_output_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bench", help="time both exact evaluators per shape")
    p.add_argument("--shapes", nargs="+", required=True, help="e.g. 2x2 3x3 or 2,3")
    p.add_argument("--components", type=int, default=40)
    p.add_argument("--sharing", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout", type=float, default=None, help="seconds, default 400")
    p.add_argument("--out", default=None, help="CSV path; instances persist next to it")
    add_output_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("bounds", help="moment bounds for a single-function system")
    p.add_argument("file")
    add_output_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gen", help="generate a random system file")
    p.add_argument("functions", type=int)
    p.add_argument("sizes")
    p.add_argument("--components", type=int, default=12)
    p.add_argument("--sharing", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-impl-size", type=int, default=3)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("paths", help="derive implementations from a door network")
    p.add_argument("file")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser(
        "search-nonmonotone",
        help="hunt for pairs where the bound ordering contradicts the exact one",
    )
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--events", type=int, default=3)
    p.add_argument("--components", type=int, default=5)
    p.add_argument("--sharing", type=float, default=0.5)
    p.add_argument("--max-impl-size", type=int, default=3)
    p.add_argument("--out", default=None, help="prefix for the first witness pair")
    add_output_flags(p)
    p.set_defaults(func=cmd_search)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GenerationError, InvalidSystemError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EvaluationTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
