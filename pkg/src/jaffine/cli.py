"""Command-line front end.

Exit codes: 0 success, 1 validation or I/O error, 2 mathematical precondition failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .harness import ConfigError, run_construct, run_reproduce_table, run_search, validate_report
from .stabilizer import DistanceOptions, PreconditionError, gv_check

__all__ = ["main", "build_parser"]

log = logging.getLogger("jaffine")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--threads", type=int, default=None, help="distance engine threads")
    common.add_argument("--no-cache", action="store_true", help="bypass the distance cache")
    common.add_argument("--cache-dir", default=None, help="cache directory (default: $JAFFINE_CACHE_DIR or ~/.cache/jaffine)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized distance methods")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="jaffine", description="Quantum codes from J-affine variety codes.", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="run the construction in a JSON config")
    p.add_argument("config")

    p = sub.add_parser("reproduce", parents=[common], help="reproduce a built-in table")
    p.add_argument("--table", required=True, help="table id 1..16 or source label")
    p.add_argument("--rows", nargs="*", default=None, help="row names (default: all)")
    p.add_argument("--budget", type=float, default=600.0, help="seconds per distance computation (<= 0: unlimited)")

    p = sub.add_parser("search", parents=[common], help="search unions of cyclotomic sets")
    p.add_argument("params")
    p.add_argument("--mode", choices=("euclid", "herm"), default="euclid")
    p.add_argument("--max-results", type=int, default=None, help="default: params file, else 10")
    p.add_argument("--budget", type=float, default=None, help="total seconds, 0 gives an empty result (default: params file, else 60)")

    p = sub.add_parser("gv-check", parents=[common], help="does [[n,k,d]]_q beat the Feng-Ma GV bound?")
    for name in ("n", "k", "d", "q"):
        p.add_argument(name, type=int)
    p.add_argument("--predicate", default="feng-ma")
    return ap


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    opts = DistanceOptions(seed=args.seed, threads=args.threads)
    kw = {"cache_dir": args.cache_dir, "use_cache": not args.no_cache}
    try:
        if args.command == "construct":
            report = run_construct(args.config, opts, **kw)
        elif args.command == "reproduce":
            budget = args.budget if args.budget > 0 else None
            report = run_reproduce_table(args.table, args.rows, budget, opts, **kw)
        elif args.command == "search":
            extra = {} if args.budget is None else {"budget": args.budget}
            report = run_search(args.params, args.mode, args.max_results, opts=opts, **extra, **kw)
        else:
            verdict = gv_check(args.n, args.k, args.d, args.q, args.predicate)
            _emit({"n": args.n, "k": args.k, "d": args.d, "q": args.q, "predicate": args.predicate, "gv": verdict},
                  args.out)
            return 0
        validate_report(report)
        _emit(report, args.out)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
