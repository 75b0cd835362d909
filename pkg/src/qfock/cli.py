"""Command-line interface: ``qfock <command> [flags]``.

Exit codes: 0 on success, 1 for engine errors, 2 for bad flags, 3 when a
theorem check finds a mismatch.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .cache import ENV_VAR, BlockCache
from .canonical import EngineError, bar_matrix, canonical_basis, solve_triangular
from .combinatorics import (BlockSpec, TruncationError, as_multipartition, encode,
                            render_abacus, size)
from .fock import bar_basis
from .theorems import Case, random_case, run_case
from .wedge import expansion_to_json, normal_order, parse_word

EXIT_ENGINE, EXIT_USAGE, EXIT_MISMATCH = 1, 2, 3


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _multipartition(text: str):
    try:
        data = json.loads(text)
        return as_multipartition(data)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad multipartition {text!r}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="rank parameter n >= 2")
    common.add_argument("--level", type=int, required=True, help="number of components")
    common.add_argument("--r", type=int, default=None, help="override the truncation length")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the block cache")
    common.add_argument("--cache-dir", default=None, help=f"cache directory (default: ${ENV_VAR} or ~/.cache/qfock)")

    p = argparse.ArgumentParser(prog="qfock", description="Canonical bases of higher-level q-deformed Fock spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("straighten", parents=[common], help="normal-order a wedge word")
    s.add_argument("--indices", required=True, type=parse_word_arg, help='e.g. "6,3,-2,4"')

    s = sub.add_parser("bar", parents=[common], help="bar image of one basis vector")
    s.add_argument("--charge", required=True, type=_ints)
    s.add_argument("--partition", required=True, type=_multipartition, help='e.g. "[[],[6]]"')

    for name, helptext in (("decomp", "q-decomposition matrix of a block"),
                           ("canon", "one canonical-basis vector")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--charge", required=True, type=_ints)
        s.add_argument("--sign", choices=("plus", "minus"), default="minus")
        if name == "decomp":
            s.add_argument("--size", type=int, required=True)
            s.add_argument("--format", choices=("json", "csv", "latex"), default="json")
        else:
            s.add_argument("--partition", required=True, type=_multipartition)

    s = sub.add_parser("check-theorems", parents=[common], help="level-reduction checks")
    s.add_argument("--theorem", choices=("A", "B"), required=True)
    s.add_argument("--charge", type=_ints, default=None, help="omit to draw random cases")
    s.add_argument("--size", type=int, default=None)
    s.add_argument("--j", type=int, default=None)
    s.add_argument("--sign", choices=("plus", "minus"), default="minus")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=1, help="number of random cases when --charge is omitted")
    s.add_argument("--timing", action="store_true", help="report wall-clock time (output is then not reproducible)")

    s = sub.add_parser("abacus", parents=[common], help="draw the abacus of a basis vector")
    s.add_argument("--charge", required=True, type=_ints)
    s.add_argument("--partition", required=True, type=_multipartition)
    return p


def parse_word_arg(text: str) -> tuple[int, ...]:
    try:
        return parse_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _cache(args) -> BlockCache | None:
    return None if args.no_cache else BlockCache(args.cache_dir)


def _validate(args) -> None:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.level < 1:
        raise UsageError("--level must be at least 1")
    charge = getattr(args, "charge", None)
    if charge is not None and len(charge) != args.level:
        raise UsageError(f"--charge has {len(charge)} entries but --level is {args.level}")
    lam = getattr(args, "partition", None)
    if lam is not None and len(lam) != args.level:
        raise UsageError(f"--partition has {len(lam)} components but --level is {args.level}")
    if getattr(args, "size", None) is not None and args.size < 0:
        raise UsageError("--size must be >= 0")
    if args.r is not None and args.r < 1:
        raise UsageError("--r must be positive")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")


def _cmd_straighten(args, out) -> int:
    exp = normal_order(args.indices, args.n, args.level)
    out.write(_dump({"n": args.n, "level": args.level, "word": list(args.indices),
                     "expansion": expansion_to_json(exp)}) + "\n")
    return 0


def _cmd_bar(args, out) -> int:
    lam = args.partition
    block = BlockSpec(args.n, args.level, args.charge, size(lam))
    out.write(_dump(bar_basis(block, lam, args.r).to_json()) + "\n")
    return 0


def _cmd_decomp(args, out) -> int:
    block = BlockSpec(args.n, args.level, args.charge, args.size)
    D = canonical_basis(block, args.sign, r=args.r, cache=_cache(args), jobs=args.jobs)
    if args.format == "csv":
        out.write(D.to_csv())
    elif args.format == "latex":
        out.write(D.to_latex())
    else:
        out.write(_dump(D.to_json()) + "\n")
    return 0


def _cmd_canon(args, out) -> int:
    lam = args.partition
    block = BlockSpec(args.n, args.level, args.charge, size(lam))
    barm = bar_matrix(block, r=args.r, cache=_cache(args), jobs=args.jobs)
    row = solve_triangular(barm.order, barm.rows, args.sign, labels=[lam])[lam]
    pos = {mu: i for i, mu in enumerate(barm.order)}
    terms = [{"multipartition": [list(p) for p in mu], "coeff": c.to_json()}
             for mu, c in sorted(row.items(), key=lambda t: pos[t[0]])]
    out.write(_dump({"block": block.to_json(), "sign": args.sign,
                     "lambda": [list(p) for p in lam], "terms": terms}) + "\n")
    return 0


def _run_case_json(case_and_seed):
    case, seed, cache_dir, no_cache, timing = case_and_seed
    cache = None if no_cache else BlockCache(cache_dir)
    rep = run_case(case, cache, seed).to_json()
    if not timing:
        rep["elapsed"] = None
    return rep


def _cmd_check(args, out) -> int:
    if args.charge is not None:
        if args.size is None or args.j is None:
            raise UsageError("--size and --j are required together with --charge")
        if args.level < 2:
            raise UsageError("theorem checks need --level >= 2")
        if not 1 <= args.j <= args.level:
            raise UsageError(f"--j must lie in [1, {args.level}]")
        cases = [Case(args.n, args.level, args.charge, args.size, args.j, args.sign, args.theorem)]
    else:
        if args.level < 2:
            raise UsageError("theorem checks need --level >= 2")
        rng = random.Random(args.seed)
        max_size = args.size if args.size is not None else 5
        cases = [random_case(rng, args.theorem, ns=(args.n,), levels=(args.level,),
                             max_size=max_size, signs=(args.sign,)) for _ in range(args.cases)]
    tasks = [(c, args.seed, args.cache_dir, args.no_cache, args.timing) for c in cases]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            reports = list(ex.map(_run_case_json, tasks))
    else:
        reports = [_run_case_json(t) for t in tasks]
    out.write(_dump(reports[0] if len(reports) == 1 else reports) + "\n")
    failed = any(not c["pass"] for rep in reports for c in rep["comparisons"])
    return EXIT_MISMATCH if failed else 0


def _cmd_abacus(args, out) -> int:
    w = encode(args.partition, args.charge, args.n)
    out.write(render_abacus(w, args.n, args.level) + "\n")
    return 0


COMMANDS = {"straighten": _cmd_straighten, "bar": _cmd_bar, "decomp": _cmd_decomp,
            "canon": _cmd_canon, "check-theorems": _cmd_check, "abacus": _cmd_abacus}


_LIST_FLAGS = ("--indices", "--charge")


def _glue_negative_lists(argv: Sequence[str]) -> list[str]:
    """Turn ``--charge -3,3`` into ``--charge=-3,3`` so argparse does not read a flag."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in _LIST_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    argv = _glue_negative_lists(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        _validate(args)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qfock: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EngineError, TruncationError, ValueError, RecursionError) as exc:
        print(f"qfock: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE


def run(argv: Sequence[str] | None = None) -> None:
    sys.exit(main(argv))


if __name__ == "__main__":
    run()
