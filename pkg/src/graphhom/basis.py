"""Enumeration of the canonical generators of one (g, h, d) slice."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .graphs import (
    GC,
    Flavor,
    GraphShape,
    OrientedGenerator,
    _connected,
    canonical_shape,
    is_zero,
    validate,
)


class CapExceeded(RuntimeError):
    """Requested slice is larger than the configured enumeration caps."""


@dataclass(frozen=True)
class Caps:
    v: int = 10
    e: int = 12

    @classmethod
    def parse(cls, text: str) -> "Caps":
        """Parse ``"v=INT,e=INT"`` (either part optional)."""
        values = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in ("v", "e") or not val.strip().lstrip("-").isdigit():
                raise ValueError(f"bad caps entry {part!r}")
            values[key] = int(val)
        return cls(**values)

    def check(self, e: int, v: int) -> None:
        if v > self.v or e > self.e:
            raise CapExceeded(f"slice with e={e}, v={v} exceeds caps v<={self.v}, e<={self.e}")

    def as_dict(self) -> dict:
        return {"v": self.v, "e": self.e}


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class BasisSlice:
    flavor: Flavor
    g: int
    h: int
    d: int
    gens: tuple  # canonical OrientedGenerators, sorted by shape

    def __len__(self):
        return len(self.gens)

    def index(self) -> dict:
        """Map canonical shape -> position."""
        return {gen.shape: i for i, gen in enumerate(self.gens)}


def slice_counts(flavor: Flavor, g: int, h: int, d: int) -> Optional[tuple]:
    """Invert the degree formula: ``(e, v)`` of the slice, or None if empty."""
    n = flavor.n
    if flavor.kind == GC:
        if h != 0:
            return None
        e = n * g - d
    else:
        m = flavor.m
        e = n * g - n - d + (n - m - 1) * h + m
    v = e - g + 1
    if e < 0 or v < 1:
        return None
    return e, v


def edge_range(flavor: Flavor, g: int, h: int) -> tuple:
    """Edge counts that can carry valid graphs: ``(e_min, e_max)``.

    ``e_max`` is None when bivalent vertices make the complex unbounded.
    The upper bound comes from ``2e + h >= k v`` with ``v = e - g + 1``.
    """
    k = flavor.min_valence
    e_min = max(g, 0)
    if k == 2:
        return e_min, None
    return e_min, k * (g - 1) + h


def degree_support(flavor: Flavor, g: int, h: int) -> tuple:
    """``(d_min, d_max)`` outside of which slices are empty (d_min may be None)."""
    e_min, e_max = edge_range(flavor, g, h)
    if flavor.kind == GC:
        top = flavor.n * g - e_min
        bottom = None if e_max is None else flavor.n * g - e_max
    else:
        n, m = flavor.n, flavor.m
        const = n * g - n + (n - m - 1) * h + m
        top = const - e_min
        bottom = None if e_max is None else const - e_max
    return bottom, top


# -------------------------------------------------------------- generation


def _hair_vectors(v, h):
    """All ways to put h indistinguishable hairs on v labeled vertices."""
    for bars in itertools.combinations(range(h + v - 1), v - 1):
        prev = -1
        out = []
        for b in bars + (h + v - 1,):
            out.append(b - prev - 1)
            prev = b
        yield tuple(out)


def _multigraphs(v, e, hairs, min_valence, *, ordered=True):
    """Edge multisets on v labeled vertices with every valence >= min_valence.

    With ``ordered`` the search only keeps labelings whose (valence, hairs)
    pairs are non-increasing along the vertex order; every isomorphism class
    has at least one such labeling.  Connectivity is checked at the leaves.
    """
    pairs = [(i, j) for i in range(v) for j in range(i, v)]
    last_of_row = {}
    for k, (i, _) in enumerate(pairs):
        last_of_row[i] = k
    val = list(hairs)
    chosen = []

    def deficit(start_row):
        return sum(max(0, min_valence - val[x]) for x in range(start_row, v))

    def rec(k, left):
        if k == len(pairs):
            if left == 0 and _connected(v, chosen):
                yield tuple(chosen)
            return
        i, j = pairs[k]
        if deficit(i) > 2 * left:
            return
        row_done = last_of_row[i] == k
        added = 0
        for c in range(left + 1):
            if c:
                chosen.append((i, j))
                val[i] += 1
                val[j] += 1
                added += 1
            if row_done:
                if val[i] < min_valence:
                    continue
                if ordered and i and (val[i], hairs[i]) > (val[i - 1], hairs[i - 1]):
                    break
            yield from rec(k + 1, left - c)
        for _ in range(added):
            chosen.pop()
            val[i] -= 1
            val[j] -= 1

    yield from rec(0, e)


def _raw_shapes(flavor: Flavor, e: int, v: int, h: int):
    """Valid shapes (possibly repeated up to isomorphism) with given counts."""
    k = flavor.min_valence
    if flavor.kind == GC:
        g = e - v + 1
        if k == 2 and g == 1:
            from .graphs import polygon

            yield polygon(v)
            return
        if k == 2 and g >= 2:
            yield from _subdivided(e, v)
            return
        for edges in _multigraphs(v, e, (0,) * v, k):
            yield GraphShape(v, edges)
        return
    for hv in _hair_vectors(v, h):
        for edges in _multigraphs(v, e, hv, k):
            yield GraphShape(v, edges, hv)


def _subdivided(e, v):
    """Valence >= 2 graphs of loop order >= 2 as subdivisions of trivalent-or-more cores."""
    g = e - v + 1
    for ec in range(g, min(e, 3 * g - 3) + 1):
        vc = ec - g + 1
        extra = e - ec
        cores = {canonical_shape(GraphShape(vc, edges)) for edges in _multigraphs(vc, ec, (0,) * vc, 3)}
        for core in sorted(cores):
            for bars in itertools.combinations(range(extra + ec - 1), ec - 1):
                counts = []
                prev = -1
                for b in bars + (extra + ec - 1,):
                    counts.append(b - prev - 1)
                    prev = b
                edges = []
                nxt = vc
                for (a, b), s in zip(core.edges, counts):
                    path = [a] + list(range(nxt, nxt + s)) + [b]
                    nxt += s
                    edges.extend(zip(path, path[1:]))
                yield GraphShape(v, edges)


def naive_shapes(flavor: Flavor, e: int, v: int, h: int):
    """Brute force over every edge multiset and hair vector; for cross-checks."""
    pairs = [(i, j) for i in range(v) for j in range(i, v)]
    hvs = list(_hair_vectors(v, h)) if flavor.hairy else [(0,) * v]
    for edges in itertools.combinations_with_replacement(pairs, e):
        for hv in hvs:
            shape = GraphShape(v, edges, hv)
            if not validate(shape, flavor):
                yield shape


def enumerate_slice(flavor: Flavor, g: int, h: int, d: int, caps: Caps = DEFAULT_CAPS,
                    *, naive: bool = False) -> BasisSlice:
    """Canonical nonzero generators of the slice, sorted by shape."""
    if not flavor.hairy:
        h = 0
    counts = slice_counts(flavor, g, h, d)
    if counts is None:
        return BasisSlice(flavor, g, h, d, ())
    e, v = counts
    lo, hi = edge_range(flavor, g, h)
    if e < lo or (hi is not None and e > hi):
        return BasisSlice(flavor, g, h, d, ())
    caps.check(e, v)
    source = naive_shapes(flavor, e, v, h) if naive else _raw_shapes(flavor, e, v, h)
    found = set()
    for shape in source:
        canon = canonical_shape(shape)
        if canon in found:
            continue
        found.add(canon)
    gens = tuple(
        OrientedGenerator.from_shape(s) for s in sorted(found, key=GraphShape.sort_key)
        if not is_zero(s, flavor)
    )
    return BasisSlice(flavor, g, h, d, gens)


def euler_characteristic(flavor: Flavor, g: int, h: int, d_lo: int, d_hi: int,
                         caps: Caps = DEFAULT_CAPS) -> int:
    """Alternating count of generators over a degree range covering the sector."""
    if not flavor.hairy:
        h = 0
    bottom, top = degree_support(flavor, g, h)
    if bottom is None:
        raise ValueError(f"{flavor} sector g={g} is unbounded below; Euler characteristic undefined")
    if bottom <= top and (d_lo > bottom or d_hi < top):
        raise ValueError(f"degree range [{d_lo}, {d_hi}] does not cover the support [{bottom}, {top}]")
    return sum(
        (-1) ** (d % 2) * len(enumerate_slice(flavor, g, h, d, caps))
        for d in range(d_lo, d_hi + 1)
    )
