"""Command-line entry point ``graphhom``.

Exit codes: 0 success, 1 failed verification, 2 invalid flags, 3 caps exceeded.
"""
from __future__ import annotations

import argparse
import configparser
import logging
import sys

from . import export, verify
from .basis import Caps, CapExceeded, degree_support, euler_characteristic
from .cache import SectorCache
from .differential import STANDARD, UNSIGNED
from .graphs import Flavor
from .homology import SectorChain
from .runs import FLAGGED_SECTORS, compute_table, default_range, hgc_sectors
from .tower import gc_tower_report, hgc_kernel_cokernel

log = logging.getLogger("graphhom")

CONFIG_KEYS = {"caps", "jobs", "format", "cache", "min_valence"}


class UsageError(Exception):
    pass


def _read_config(path):
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_string("[graphhom]\n" + fh.read())
    values = dict(parser["graphhom"])
    unknown = set(values) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return values


def _common(p):
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--cache", metavar="DIR", help="cache directory (default $GRAPHHOM_CACHE or ./.graphhom-cache)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--caps", metavar="v=INT,e=INT")
    p.add_argument("--jobs", type=int, metavar="N", help="worker processes for independent sectors")
    p.add_argument("--config", metavar="FILE", help="key = value file presetting caps, jobs, format, cache, min_valence")
    p.add_argument("--dmin", type=int)
    p.add_argument("--dmax", type=int)
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphhom", description="Exact homology of GC_n^2 and HGC_{m,n}.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gc", help="homology of GC_n^2 by loop order")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, action="append")
    p.add_argument("--gmax", type=int)
    p.add_argument("--min-valence", type=int, choices=(2, 3))

    p = sub.add_parser("hgc", help="homology of HGC_{m,n} by loop order and hairs")
    _common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, action="append")
    p.add_argument("--h", type=int, action="append")
    p.add_argument("--ghmax", type=int)

    p = sub.add_parser("tower", help="stage-k classification of graph homology classes")
    _common(p)
    p.add_argument("--m", type=int, help="omit (or set equal to --n) for the GC / m=n mode")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ghmax", type=int, default=4)
    p.add_argument("--gmax", type=int, default=3)
    p.add_argument("--min-valence", type=int, choices=(2, 3))

    p = sub.add_parser("euler", help="Euler characteristic of bounded sectors")
    _common(p)
    p.add_argument("--flavor", choices=("gc", "hgc"), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--h", type=int, default=0)

    p = sub.add_parser("verify", help="run consistency suites; exit 1 on any failure")
    _common(p)
    p.add_argument("suite", choices=("lemma-gc-bounds", "lemma-hgc-bounds", "d-squared", "euler",
                                     "transpose", "valence", "polygons", "contraction", "all"))
    p.add_argument("--flavor", choices=("gc", "hgc"), default="gc")
    p.add_argument("--m", type=int, action="append")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--gmax", type=int, default=3)
    p.add_argument("--ghmax", type=int, default=4)
    p.add_argument("--min-valence", type=int, choices=(2, 3))
    p.add_argument("--convention", choices=(STANDARD, UNSIGNED), default=STANDARD,
                   help="'unsigned' drops orientation signs (negative control)")
    return parser


def _settings(args):
    conf = _read_config(args.config) if args.config else {}
    try:
        caps = Caps.parse(args.caps or conf.get("caps", ""))
    except ValueError as exc:
        raise UsageError(str(exc))
    jobs = args.jobs if args.jobs is not None else int(conf.get("jobs", 1))
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    fmt = args.format or conf.get("format", "json")
    if fmt not in ("json", "csv"):
        raise UsageError(f"bad format {fmt!r}")
    cache = None if args.no_cache else SectorCache(args.cache or conf.get("cache"))
    minval = getattr(args, "min_valence", None)
    if minval is None and "min_valence" in conf:
        minval = int(conf["min_valence"])
    return caps, jobs, fmt, cache, minval


def _range(args, flavor, g, h=0):
    lo, hi = default_range(flavor, g, h)
    return (lo if args.dmin is None else args.dmin), (hi if args.dmax is None else args.dmax)


def _gc_loops(args):
    if args.g:
        loops = sorted(set(args.g))
    elif args.gmax:
        loops = list(range(1, args.gmax + 1))
    else:
        raise UsageError("give --g or --gmax")
    if min(loops) < 1:
        raise UsageError("GC loop order must be >= 1")
    return loops


def _hgc_grid(args):
    if args.g or args.h:
        if not (args.g and args.h):
            raise UsageError("give both --g and --h, or --ghmax")
        grid = sorted({(g, h) for g in args.g for h in args.h})
    elif args.ghmax:
        grid = hgc_sectors(args.ghmax)
    else:
        raise UsageError("give --g/--h or --ghmax")
    if any(g < 0 or h < 1 for g, h in grid):
        raise UsageError("need g >= 0 and h >= 1")
    for s in grid:
        if s in FLAGGED_SECTORS:
            print(f"warning: sector (g,h)={s} uses an unsettled convention", file=sys.stderr)
    return grid


def _emit_table(table, fmt):
    sys.stdout.write(export.table_json(table) if fmt == "json" else export.table_csv(table))


def cmd_homology(args):
    caps, jobs, fmt, cache, minval = _settings(args)
    if args.cmd == "gc":
        fl = Flavor.gc(args.n, minval or 2)
        sectors = [(g, 0, *_range(args, fl, g)) for g in _gc_loops(args)]
    else:
        fl = _hgc_flavor(args.m, args.n)
        sectors = [(g, h, *_range(args, fl, g, h)) for g, h in _hgc_grid(args)]
    _emit_table(compute_table(fl, sectors, caps, jobs=jobs, cache=cache), fmt)
    return 0


def _hgc_flavor(m, n):
    try:
        return Flavor.hgc(m, n)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_tower(args):
    caps, jobs, fmt, cache, minval = _settings(args)
    if args.m is None or args.m == args.n:
        fl = Flavor.gc(args.n, minval or 2)
        sectors = [(g, 0, *_range(args, fl, g)) for g in range(1, args.gmax + 1)]
        table = compute_table(fl, sectors, caps, jobs=jobs, cache=cache)
        report = gc_tower_report(table, args.k)
    else:
        fl = _hgc_flavor(args.m, args.n)
        grid = hgc_sectors(args.ghmax, include_flagged=False)
        sectors = [(g, h, *_range(args, fl, g, h)) for g, h in grid]
        table = compute_table(fl, sectors, caps, jobs=jobs, cache=cache)
        report = hgc_kernel_cokernel(table, args.m, args.n, args.k)
    sys.stdout.write(export.tower_json(report) if fmt == "json" else export.tower_csv(report))
    return 0


def cmd_euler(args):
    caps, *_ = _settings(args)
    if args.flavor == "gc":
        fl, h = Flavor.gc(args.n, 3), 0
    else:
        fl, h = _hgc_flavor(args.m, args.n), args.h
    bottom, top = degree_support(fl, args.g, h)
    if bottom > top:
        print(f"{fl} g={args.g} h={h}: empty sector, chi=0")
        return 0
    chi = euler_characteristic(fl, args.g, h, bottom, top, caps)
    dims = SectorChain.build(fl, args.g, h, bottom, top, caps).homology()
    alt = sum((-1) ** (d % 2) * x for d, x in dims.items())
    print(f"{fl} g={args.g} h={h} degrees [{bottom},{top}]: chi={chi} homology sum={alt}")
    return 0 if chi == alt else 1


def cmd_verify(args):
    caps, _, _, _, minval = _settings(args)
    ns = args.n or [2, 3]
    suite = args.suite
    checks = []
    if suite in ("lemma-gc-bounds", "all"):
        checks += verify.gc_window_checks(ns, [g for g in (2, 3) if g <= args.gmax], minval or 3, caps)
    if suite in ("lemma-hgc-bounds", "all"):
        checks += verify.hgc_window_checks(_mn_pairs(args), args.ghmax, caps)
    if suite in ("d-squared", "transpose", "contraction", "all"):
        for fl, sectors in _ranged(args, minval):
            if suite in ("d-squared", "all"):
                checks += verify.d_squared(fl, sectors, caps, args.convention)
            if suite in ("transpose", "all"):
                checks += verify.transpose_ranks(fl, sectors, caps)
            if suite in ("contraction", "all"):
                checks += verify.contraction_agreement(fl, sectors, caps)
    if suite in ("euler", "all"):
        if args.flavor == "gc" or suite == "all":
            for n in ns:
                checks += verify.euler(Flavor.gc(n, 3), [(g, 0) for g in range(2, args.gmax + 1)], caps)
        if args.flavor == "hgc" or suite == "all":
            for m, n in _mn_pairs(args):
                checks += verify.euler(Flavor.hgc(m, n), hgc_sectors(args.ghmax), caps)
    if suite in ("valence", "all"):
        checks += verify.valence_agreement(ns, range(2, args.gmax + 1), caps)
    if suite in ("polygons", "all"):
        checks += verify.polygon_classes(ns, caps)
    failed = 0
    for c in checks:
        print(c.line())
        failed += not c.ok
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


def _mn_pairs(args):
    ms = args.m or [1, 2]
    ns = args.n or [3, 4]
    pairs = [(m, n) for m in ms for n in ns if 1 <= m <= n]
    if not pairs:
        raise UsageError("no valid (m, n) pairs with 1 <= m <= n")
    return pairs


def _ranged(args, minval):
    if args.flavor == "gc" or args.suite == "all":
        for n in args.n or [2, 3]:
            yield verify.gc_sectors(n, args.gmax, minval or 2)
    if args.flavor == "hgc" or args.suite == "all":
        for m, n in _mn_pairs(args):
            yield verify.hgc_ranged(m, n, args.ghmax)


COMMANDS = {"gc": cmd_homology, "hgc": cmd_homology, "tower": cmd_tower,
            "euler": cmd_euler, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
