"""Command line entry point.

Exit status: 0 on success, 1 when a verification or oracle cross-check
fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import goodness
from .census import XSet, eval_count
from .family import oracle_count
from .mlcif import MAX_R, Catalog, GenAntichain, cached_catalog, format_catalog
from .setcore import Params, format_set, parse_set

CACHE_ENV = "LCIF_CACHE_DIR"


class UsageError(Exception):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "lcif"


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"2..5"`` or ``"2,4,6"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None


def _catalog(args, r: int) -> Catalog:
    if r < 2:
        raise UsageError(f"r must be >= 2, got {r}")
    if r > MAX_R and not args.override_guard:
        raise UsageError(f"r={r} exceeds {MAX_R}; rerun with --override-guard")
    return cached_catalog(r, args.cache_dir, override=args.override_guard)


def _params(n: int, r: int) -> Params:
    try:
        p = Params(n, r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not p.wide:
        raise UsageError(f"need n >= 2r, got n={n}, r={r}")
    return p


def _x(text: str, p_or_r) -> tuple[tuple[int, ...], XSet]:
    n = p_or_r.n if isinstance(p_or_r, Params) else None
    r = p_or_r.r if isinstance(p_or_r, Params) else p_or_r
    raw = parse_set(text, n)
    if raw[0] == 1:
        raise UsageError("X must not contain 1")
    return raw, XSet.from_elements(raw, r)


def _reduction(x: XSet) -> str:
    return f"X reduces to inside={{{format_set(x.inside)}}}, m={x.m} element(s) above 2r"


def cmd_enumerate(args, out) -> int:
    cat = _catalog(args, args.r)
    if args.format == "structured":
        out.write(format_catalog(cat))
    else:
        for e in cat:
            out.write(e.pretty() + "\n")
    return 0


def cmd_count(args, out) -> int:
    p = _params(args.n, args.r)
    raw, x = _x(args.x, p)
    gens = GenAntichain.parse(args.gens)
    if not gens.fits(p.r):
        raise UsageError(f"generators must lie in [1, {2 * p.r}] with at most {p.r} elements")
    value = eval_count(gens, x, p)
    oracle = oracle_count(gens, p, raw) if args.oracle else None
    if args.format == "structured":
        line = f"r={p.r}; n={p.n}; gens={gens}; inside={format_set(x.inside)}; m={x.m}; count={value}"
        if oracle is not None:
            line += f"; oracle={oracle}"
        out.write(line + "\n")
    else:
        out.write(_reduction(x) + "\n")
        out.write(f"{value}\n")
        if oracle is not None:
            out.write(f"oracle {oracle} ({'agrees' if oracle == value else 'DISAGREES'})\n")
    return 1 if oracle is not None and oracle != value else 0


def cmd_classify(args, out) -> int:
    p = _params(args.n, args.r)
    _, x = _x(args.x, p)
    v = goodness.classify_at(x, p, _catalog(args, p.r), confirm=args.confirm)
    verdict = "good" if v.good else "not-good"
    if args.format == "structured":
        line = f"record=verdict; r={p.r}; n={p.n}; inside={format_set(x.inside)}; m={x.m}; verdict={verdict}"
        if v.shortcut:
            line += f"; shortcut={v.shortcut}"
        out.write(line + "\n")
        for w in v.witnesses:
            out.write(f"record=witness; gens={w.family}; family={w.family_count}; star={w.star_count}\n")
    else:
        out.write(_reduction(x) + "\n")
        note = f" (shortcut: {v.shortcut})" if v.shortcut else ""
        out.write(f"{verdict} at n={p.n}, r={p.r}{note}\n")
        for w in v.witnesses:
            out.write(f"witness {w.family.pretty()}: family {w.family_count} > star {w.star_count}\n")
    return 0


def cmd_classify_eventual(args, out) -> int:
    _, x = _x(args.x, args.r)
    cat = _catalog(args, args.r)
    v = goodness.classify_eventual(x, args.r, cat, confirm=args.confirm)
    verdict = "eventually-good" if v.eventually_good else "not-eventually-good"
    beaten = [(e, s.n) for e, s in v.per_family if isinstance(s, goodness.EventuallyNegative)]
    if args.format == "structured":
        line = f"record=eventual; r={args.r}; inside={format_set(x.inside)}; m={x.m}; verdict={verdict}"
        if v.threshold is not None:
            line += f"; threshold={v.threshold}"
        if v.shortcut:
            line += f"; shortcut={v.shortcut}"
        out.write(line + "\n")
        for e, n in beaten:
            out.write(f"record=witness; gens={e}; beats-star-from={n}\n")
    else:
        out.write(_reduction(x) + "\n")
        note = f" (shortcut: {v.shortcut})" if v.shortcut else ""
        if v.eventually_good:
            out.write(f"{verdict}: good for every n >= {v.threshold}{note}\n")
        else:
            out.write(f"{verdict}{note}\n")
        for e, n in beaten:
            out.write(f"witness {e.pretty()}: beats the star for every large n, first at n={n}\n")
    return 0


def cmd_minimal_good(args, out) -> int:
    p = _params(args.n, args.r)
    cat = _catalog(args, p.r)
    try:
        found = goodness.minimal_good(p, args.size, cat, override=args.override_guard)
    except ValueError as exc:
        raise UsageError(f"{exc}; rerun with --override-guard") from None
    size = args.size if args.size is not None else "all"
    if args.format == "structured":
        out.write(f"record=minimal-good; r={p.r}; n={p.n}; size={size}; order=shift; count={len(found)}\n")
        for x in found:
            out.write(f"record=set; x={format_set(x)}\n")
    else:
        out.write(f"# minimal good sets (shift order, equal sizes) at n={p.n}, r={p.r}, size={size}\n")
        for x in found:
            out.write(format_set(x) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    rs = parse_range(args.r)
    ns = parse_range(args.n) if args.n else None
    for r in rs:
        _catalog(args, r)
    report = goodness.verify_suite(args.suite, rs, ns)
    if args.format == "structured":
        for note in report.notes:
            out.write(f"record=note; suite={report.suite}; text={note}\n")
        for res in report.results:
            out.write(f"record=claim; suite={report.suite}; {res.record()}\n")
        out.write(f"record=summary; suite={report.suite}; status={'pass' if report.ok else 'fail'}\n")
    else:
        for note in report.notes:
            out.write(f"# {note}\n")
        for res in report.results:
            out.write(res.human() + "\n")
        out.write(f"{report.suite}: {'pass' if report.ok else 'FAIL'}\n")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcif",
        description="Maximal left-compressed intersecting families and the sets they hit.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--cache-dir", type=Path, default=None,
                        help=f"catalog cache (default ${CACHE_ENV} or ~/.cache/lcif)")
    common.add_argument("--override-guard", action="store_true",
                        help="allow r above the default limit and large searches")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list the generator catalog for r")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", parents=[common], help="count family members meeting X")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gens", required=True, help='generators, e.g. "1,4|2,3,4"')
    p.add_argument("--x", required=True, help='hitting set, e.g. "2,3,9"')
    p.add_argument("--oracle", action="store_true", help="cross-check by full enumeration")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("classify", parents=[common], help="is X good at (n, r)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--confirm", action="store_true", help="compare every family even when |X| > r")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("classify-eventual", parents=[common], help="is X good for all large n")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--confirm", action="store_true")
    p.set_defaults(func=cmd_classify_eventual)

    p = sub.add_parser("minimal-good", parents=[common], help="minimal good sets at (n, r)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, default=None)
    p.set_defaults(func=cmd_minimal_good)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=sorted(goodness.SUITES), required=True)
    p.add_argument("--r", required=True, help='r values, e.g. "2..5"')
    p.add_argument("--n", default=None, help="n values (default depends on the suite)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.cache_dir is None:
        args.cache_dir = default_cache_dir()
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"lcif: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"lcif: error: {exc}", file=sys.stderr)
        return 2
