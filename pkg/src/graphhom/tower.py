"""Degree bookkeeping for the arity-truncated tower.

All functions are exact integer formulas.  Graded pieces of the hairy
complex are labeled by loop order ``g`` and hair count ``h``; ``r`` is the
arity and ``k`` the truncation stage.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

from .graphs import GC, HGC

STABLE = "stable"
KERNEL = "kernel"
COKERNEL_SLOT = "cokernel-slot"
OUT_OF_WINDOW = "out-of-window"
ZERO = "zero"
UNRESOLVED = "unresolved"


def _ceil_div(a, b):
    return -(-a // b)


def deg_from_ghr(m, n, g, h, r):
    """Degree of the arity-``r`` part of the (g, h) piece of the deformation complex."""
    if r < 2 or h < 1 or g < 0:
        raise ValueError("need r >= 2, h >= 1, g >= 0")
    return (n - m - 2) * (g + h - 1) + m * g + h - r + 1


def deg_from_ghr_diag(n, g, h, r):
    """The same degree for ``m == n``."""
    if r < 2 or h < 1 or g < 0:
        raise ValueError("need r >= 2, h >= 1, g >= 0")
    return (n - 2) * g - h - r + 3


def r_bounds(g, h) -> Optional[tuple]:
    """Arity range ``(max(h, 2), g + h)`` of the (g, h) piece, or None if empty."""
    lo, hi = max(h, 2), g + h
    return (lo, hi) if lo <= hi else None


def hgc_window(m, n, g, h):
    """Degrees outside of which hairy homology of loop order g with h hairs vanishes."""
    base = (n - m - 2) * (g + h - 1)
    return base + (m - 1) * g + 1, base + m * g + 1


def gc_window(n, g):
    """Degree window for loop order ``g >= 2`` of GC_n^2 (one tighter on top for g >= 3)."""
    if g < 2:
        raise ValueError("degree window needs loop order >= 2; use the polygon classes for g = 1")
    top = (n - 2) * g + 1 if g == 2 else (n - 2) * g
    return (n - 3) * g + 3, top


def d_crit(m, n, g, h, k):
    """Arity truncation at k kills exactly the degrees ``<= d_crit - 1`` of the (g, h) piece."""
    if k < 1:
        raise ValueError("k >= 1")
    return (n - m - 2) * (g + h - 1) + m * g + h - k + 1


def cokernel_index_range(g, h, k) -> bool:
    """Whether (g, h) can carry a spurious cokernel piece at stage k."""
    return g >= 1 and h >= 1 and h <= k <= g + h - 1


def cokernel_homotopy_degree(m, n, g, h, k):
    return d_crit(m, n, g, h, k) + 1


def gc_tower_windows(n, g, k):
    """``(d0, d1)``: the g-loop map into stage k is zero for ``0 < d <= d0`` and injective for ``d >= d1``."""
    if g < 1 or k < 1:
        raise ValueError("need g >= 1, k >= 1")
    d1 = (n - 2) * g + 4 - 2 * k + min(k - 1, g)
    d0 = (n - 2) * g + 3 - 2 * k
    return d0, d1


def arity_window(R, g):
    """Arities that can occur among pieces with ``r + h == R`` in loop order g."""
    if R < 2 or g < 0:
        raise ValueError("need R >= 2, g >= 0")
    return _ceil_div(R, 2), min(R - 1, (R + g) // 2)


def sector_killed(R, k) -> bool:
    """The ``r + h == R`` piece maps to zero at stage k."""
    return R > 2 * k


def sector_preserved(R, g, k) -> bool:
    """The ``r + h == R`` piece survives truncation at stage k unchanged."""
    return R <= 2 * k - min(k - 1, g)


def combinatorial_bounds(g):
    """Max edges and vertices of an at-least-trivalent graph of loop order g."""
    if g < 2:
        raise ValueError("g >= 2")
    return 3 * g - 3, 2 * g - 2


def polygon_stage(j: int):
    """Stage at which the one-loop class with j edges enters the tower: ``(j + 3) / 2``."""
    return (j + 3) / 2


@dataclass(frozen=True)
class TruncationWindow:
    n: int
    g: int
    k: int
    role: str  # "hgc-critical", "gc-zero" or "gc-inject"
    d: int
    m: Optional[int] = None
    h: Optional[int] = None
    window: Optional[tuple] = None  # vanishing window of the sector, if known


@dataclass
class TowerReport:
    kind: str
    n: int
    k: int
    m: Optional[int] = None
    rows: list = field(default_factory=list)
    windows: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "flavor": self.kind,
            "params": {"m": self.m, "n": self.n, "k": self.k},
            "rows": self.rows,
            "windows": [asdict(w) for w in self.windows],
        }


def _row(g, h, d, dim, cls, homotopy, note=""):
    return {"g": g, "h": h, "d": d, "homotopy_degree": homotopy, "dim": dim,
            "class": cls, "note": note}


def hgc_kernel_cokernel(table, m, n, k, sectors=None) -> TowerReport:
    """Classify the hairy homology classes at stage ``k``.

    ``sectors`` defaults to every (g, h) present in ``table``.  Homology in
    degree d maps to homotopy degree d + 1.  Cokernel slots locate possible
    spurious classes; their dimension is not computable from graph homology
    alone and is reported as None.
    """
    fl = table.flavor
    if fl.kind != HGC or (fl.m, fl.n) != (m, n):
        raise ValueError(f"table is for {fl}, not HGC_{m},{n}")
    present = set(table.sectors())
    sectors = sorted(present if sectors is None else sectors)
    report = TowerReport(HGC, n, k, m)
    for g, h in sectors:
        if (g, h) not in present:
            raise KeyError(f"sector (g={g}, h={h}) missing from homology table")
        lo, hi = hgc_window(m, n, g, h)
        dc = d_crit(m, n, g, h, k)
        report.windows.append(TruncationWindow(n, g, k, "hgc-critical", dc, m, h, (lo, hi)))
        for d, dim in sorted(table.sector(g, h).items()):
            note = "" if d + 1 >= 1 else "nonpositive homotopy degree"
            if not lo <= d <= hi:
                cls = OUT_OF_WINDOW
            elif g + h > k and d < dc:
                cls = KERNEL
            else:
                cls = STABLE
            if dim == 0 and cls == KERNEL:
                note = note or "no classes to kill"
            report.rows.append(_row(g, h, d, dim, cls, d + 1, note))
        if cokernel_index_range(g, h, k):
            report.rows.append(_row(g, h, dc, None, COKERNEL_SLOT, dc + 1,
                                    f"possible spurious piece; gone at stage {k + 1}"))
    report.rows.sort(key=lambda r: (r["g"], r["h"], r["d"], r["class"]))
    return report


def gc_tower_report(table, k, loops=None) -> TowerReport:
    """Classify GC_n^2 homology at stage k by the zero / unresolved / injective windows.

    Here the homotopy degree equals the homology degree; the classification
    only has content in positive degrees.
    """
    fl = table.flavor
    if fl.kind != GC:
        raise ValueError("gc_tower_report needs a GC table")
    n = fl.n
    present = sorted({g for g, _ in table.sectors()})
    loops = present if loops is None else sorted(loops)
    report = TowerReport(GC, n, k)
    for g in loops:
        if g not in present:
            raise KeyError(f"loop order {g} missing from homology table")
        d0, d1 = gc_tower_windows(n, g, k)
        window = gc_window(n, g) if g >= 2 else None
        report.windows.append(TruncationWindow(n, g, k, "gc-zero", d0, window=window))
        report.windows.append(TruncationWindow(n, g, k, "gc-inject", d1, window=window))
        for d, dim in sorted(table.sector(g, 0).items()):
            notes = []
            if d <= 0:
                notes.append("nonpositive degree")
            if g == 1 and dim:
                notes.append(f"one-loop class with {n - d} edges enters at stage {polygon_stage(n - d):g}")
            note = "; ".join(notes)
            if d <= 0:
                cls = OUT_OF_WINDOW
            elif g >= 2 and not (gc_window(n, g)[0] <= d <= gc_window(n, g)[1]):
                cls = OUT_OF_WINDOW
            elif d <= d0:
                cls = ZERO
            elif d >= d1:
                cls = STABLE
            else:
                cls = UNRESOLVED
            report.rows.append(_row(g, 0, d, dim, cls, d, note))
    return report
