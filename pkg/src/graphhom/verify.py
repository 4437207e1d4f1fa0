"""Executable consistency checks shared by the CLI and the acceptance tests.

Each suite yields :class:`Check` records; nothing here raises on a failed
check, the caller decides how to report.
"""
from __future__ import annotations

from dataclasses import dataclass

from .basis import DEFAULT_CAPS, degree_support, enumerate_slice, euler_characteristic
from .differential import STANDARD, SparseIntMatrix, check_d_squared, contraction_terms
from .graphs import Flavor, is_zero, polygon, theta
from .homology import SectorChain
from .rank import rank, rank_mod_p, PRIMES
from .runs import MAX_POLYGON, default_range, hgc_sectors
from .tower import gc_window, hgc_window


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _gc_loops(g_max):
    return range(1, g_max + 1)


def d_squared(flavor: Flavor, sectors, caps=DEFAULT_CAPS, convention=STANDARD):
    """``sectors``: iterable of (g, h, d_lo, d_hi); checks C_d -> C_{d-2} for d in range + 1."""
    for g, h, lo, hi in sectors:
        bad = []
        for d in range(lo, hi + 2):
            gen = check_d_squared(flavor, g, h, d, caps, convention)
            if gen is not None:
                bad.append((d, gen))
        yield Check(f"d-squared {flavor} g={g} h={h} d=[{lo},{hi + 1}]", not bad,
                    f"first offending generator in degree {bad[0][0]}: {bad[0][1]}" if bad else "")


def gc_window_checks(ns, g_values, min_valence=3, caps=DEFAULT_CAPS):
    for n in ns:
        fl = Flavor.gc(n, min_valence)
        for g in g_values:
            lo, hi = default_range(fl, g)
            dims = SectorChain.build(fl, g, 0, lo, hi, caps).homology()
            wlo, whi = gc_window(n, g)
            outside = {d: x for d, x in dims.items() if x and not wlo <= d <= whi}
            yield Check(f"gc window {fl} g={g} [{wlo},{whi}] checked d=[{lo},{hi}]",
                        not outside, f"classes outside window: {outside}" if outside else "")


def hgc_window_checks(mns, gh_max, caps=DEFAULT_CAPS):
    for m, n in mns:
        fl = Flavor.hgc(m, n)
        for g, h in hgc_sectors(gh_max, include_flagged=False):
            lo, hi = default_range(fl, g, h)
            dims = SectorChain.build(fl, g, h, lo, hi, caps).homology()
            wlo, whi = hgc_window(m, n, g, h)
            outside = {d: x for d, x in dims.items() if x and not wlo <= d <= whi}
            yield Check(f"hgc window {fl} g={g} h={h} [{wlo},{whi}]", not outside,
                        f"classes outside window: {outside}" if outside else "")


def euler(flavor: Flavor, sectors, caps=DEFAULT_CAPS):
    """Generator count vs homology alternating sums on bounded sectors ``(g, h)``."""
    for g, h in sectors:
        bottom, top = degree_support(flavor, g, h)
        if bottom > top:
            yield Check(f"euler {flavor} g={g} h={h}", True, "empty sector")
            continue
        chi = euler_characteristic(flavor, g, h, bottom, top, caps)
        dims = SectorChain.build(flavor, g, h, bottom, top, caps).homology()
        alt = sum((-1) ** (d % 2) * x for d, x in dims.items())
        yield Check(f"euler {flavor} g={g} h={h}", chi == alt, f"chi={chi} homology={alt}")


def transpose_ranks(flavor: Flavor, sectors, caps=DEFAULT_CAPS):
    """rank(M) == rank(M^T) and the two-prime modular ranks agree on every matrix."""
    for g, h, lo, hi in sectors:
        chain = SectorChain.build(flavor, g, h, lo, hi, caps)
        bad = []
        for d, M in chain.matrices.items():
            r = rank(M)
            if r != rank(M.transpose()) or any(rank_mod_p(M, p) != r for p in PRIMES):
                bad.append(d)
        yield Check(f"transpose-rank {flavor} g={g} h={h} ({len(chain.matrices)} matrices)",
                    not bad, f"mismatch in degrees {bad}" if bad else "")


def valence_agreement(ns, g_values, caps=DEFAULT_CAPS):
    """GC_n^2 and its trivalent subcomplex have the same homology for g >= 2."""
    for n in ns:
        two, three = Flavor.gc(n, 2), Flavor.gc(n, 3)
        for g in g_values:
            lo, hi = default_range(two, g)
            h2 = SectorChain.build(two, g, 0, lo, hi, caps).homology()
            h3 = SectorChain.build(three, g, 0, lo, hi, caps).homology()
            yield Check(f"valence 2 vs 3 n={n} g={g} d=[{lo},{hi}]", h2 == h3,
                        "" if h2 == h3 else f"{h2} vs {h3}")


def contraction_agreement(flavor: Flavor, sectors, caps=DEFAULT_CAPS):
    """Homology of the edge-contraction complex equals that of the splitting complex."""
    for g, h, lo, hi in sectors:
        chain = SectorChain.build(flavor, g, h, lo, hi, caps)
        ranks = {}
        for d in range(lo, hi + 2):
            src, dst = chain.slices[d - 1], chain.slices[d]
            index = dst.index()
            entries = {}
            for j, gen in enumerate(src.gens):
                for shape, c in contraction_terms(gen, flavor).items():
                    entries[index[shape], j] = c
            ranks[d] = rank(SparseIntMatrix(len(dst), len(src), entries))
        dual = {d: len(chain.slices[d]) - ranks[d] - ranks[d + 1] for d in range(lo, hi + 1)}
        split = chain.homology()
        yield Check(f"contraction {flavor} g={g} h={h}", dual == split,
                    "" if dual == split else f"{dual} vs {split}")


def polygon_classes(ns, caps=DEFAULT_CAPS):
    """One-loop homology is spanned by the surviving polygons; two-loop n=3 is theta."""
    for n in ns:
        fl = Flavor.gc(n, 2)
        lo, hi = n - MAX_POLYGON, n - 1
        dims = SectorChain.build(fl, 1, 0, lo, hi, caps).homology()
        predicted = {n - j: int(not is_zero(polygon(j), fl)) for j in range(1, MAX_POLYGON + 1)}
        yield Check(f"one-loop classes n={n}", dims == predicted,
                    f"surviving polygons C_j, j in {[n - d for d, x in sorted(dims.items(), reverse=True) if x]}")
    fl = Flavor.gc(3, 2)
    lo, hi = default_range(fl, 2)
    dims = SectorChain.build(fl, 2, 0, lo, hi, caps).homology()
    basis = enumerate_slice(fl, 2, 0, 3, caps)
    ok = {d: x for d, x in dims.items() if x} == {3: 1} and [gen.shape for gen in basis.gens] == [theta()]
    yield Check("two-loop n=3 is theta in degree 3", ok, f"nonzero dims {({d: x for d, x in dims.items() if x})}")


def gc_sectors(n, g_max, min_valence=2):
    fl = Flavor.gc(n, min_valence)
    out = []
    for g in _gc_loops(g_max):
        if min_valence == 3 and g == 1:
            continue
        lo, hi = default_range(fl, g)
        out.append((g, 0, lo, hi))
    return fl, out


def hgc_ranged(m, n, gh_max, include_flagged=True):
    fl = Flavor.hgc(m, n)
    return fl, [(g, h, *default_range(fl, g, h)) for g, h in hgc_sectors(gh_max, include_flagged)]
