"""Sector grids, default degree ranges and (optionally parallel) table assembly."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor

from .basis import DEFAULT_CAPS, Caps, degree_support
from .cache import SectorCache, cache_key
from .graphs import Flavor
from .homology import HomologyTable, homology_dims
from .tower import gc_window, hgc_window

log = logging.getLogger(__name__)

#: sectors whose conventions are unsettled (bivalent hair vertices, bare segment)
FLAGGED_SECTORS = frozenset({(0, 1), (0, 2)})
MAX_POLYGON = 8


def default_range(flavor: Flavor, g: int, h: int = 0) -> tuple:
    """Degree range to compute for a sector when none is given.

    Bounded complexes use their whole support together with the vanishing
    window; GC_n^2 with bivalent vertices uses the window widened by two
    below and the support above; one-loop GC covers polygons up to 8 edges.
    """
    n = flavor.n
    bottom, top = degree_support(flavor, g, h)
    if flavor.hairy:
        lo, hi = hgc_window(flavor.m, n, g, h)
        if bottom > top:
            return lo, hi
        return min(lo, bottom), max(hi, top)
    if g == 1:
        return n - MAX_POLYGON, n - 1
    lo, hi = gc_window(n, g)
    if bottom is None:
        return lo - 2, top
    return min(lo, bottom), max(hi, top)


def hgc_sectors(gh_max: int, include_flagged=True) -> list:
    return [
        (g, h)
        for g in range(gh_max)
        for h in range(1, gh_max - g + 1)
        if include_flagged or (g, h) not in FLAGGED_SECTORS
    ]


def _sector_task(args):
    flavor, g, h, d_lo, d_hi, caps = args
    return homology_dims(flavor, g, h, d_lo, d_hi, caps)


def compute_table(flavor: Flavor, sectors, caps: Caps = DEFAULT_CAPS, *, jobs: int = 1,
                  cache: SectorCache | None = None) -> HomologyTable:
    """Homology for ``sectors``, an iterable of ``(g, h, d_lo, d_hi)``.

    Sector computations are independent; with ``jobs > 1`` they run in worker
    processes.  Assembly order is fixed, so the table never depends on
    scheduling or on whether values came from the cache.
    """
    sectors = [(g, h if flavor.hairy else 0, lo, hi) for g, h, lo, hi in sectors]
    results = {}
    todo = []
    for g, h, lo, hi in sectors:
        key = cache_key(flavor, g, h, lo, hi, caps)
        hit = cache.load(key) if cache else None
        if hit is not None:
            log.debug("cache hit for %s g=%d h=%d", flavor, g, h)
            results[g, h, lo, hi] = hit
        else:
            todo.append(((flavor, g, h, lo, hi, caps), key))
    if todo:
        args = [a for a, _ in todo]
        if jobs > 1 and len(args) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                dims = list(pool.map(_sector_task, args))
        else:
            dims = [_sector_task(a) for a in args]
        for (a, key), x in zip(todo, dims):
            results[a[1], a[2], a[3], a[4]] = x
            if cache:
                cache.store(key, x)
    table = HomologyTable(flavor, caps=caps)
    for g, h, lo, hi in sorted(sectors):
        table.add_sector(g, h, results[g, h, lo, hi])
    return table
