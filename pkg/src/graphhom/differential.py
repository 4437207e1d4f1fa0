"""Vertex-splitting differential and its matrices between adjacent slices."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .basis import BasisSlice, Caps, DEFAULT_CAPS, enumerate_slice
from .graphs import Flavor, OrientedGenerator, canonical_form, degree

STANDARD = "standard"
#: drops every orientation sign; only for negative-control tests
UNSIGNED = "unsigned"


class ExhaustivenessError(RuntimeError):
    """A split term is missing from the target slice (enumeration bug)."""


@dataclass
class SparseIntMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # (row, col) -> nonzero int

    def __post_init__(self):
        for (r, c), x in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if x == 0:
                del self.entries[r, c]

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, {
            (i, j): x for i, r in enumerate(rows) for j, x in enumerate(r) if x
        })

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), x in self.entries.items():
            out[r][c] = x
        return out

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(c, r): x for (r, c), x in self.entries.items()})

    def column(self, c) -> dict:
        return {r: x for (r, cc), x in self.entries.items() if cc == c}

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row = {}
        for (k, c), x in other.entries.items():
            by_row.setdefault(k, []).append((c, x))
        out = {}
        for (r, k), x in self.entries.items():
            for c, y in by_row.get(k, ()):
                out[r, c] = out.get((r, c), 0) + x * y
        return SparseIntMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, SparseIntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)


def _half_edges(gen: OrientedGenerator, w: int):
    """Half-edges and hairs at vertex ``w`` as ``(kind, index, end)`` triples."""
    out = []
    for idx, (t, h) in enumerate(gen.edges):
        if t == w:
            out.append(("e", idx, 0))
        if h == w:
            out.append(("e", idx, 1))
    for idx, x in enumerate(gen.hairs):
        if x == w:
            out.append(("h", idx, None))
    return out


def raw_splits(gen: OrientedGenerator, flavor: Flavor):
    """Labeled split terms, each with coefficient +1 before canonicalization.

    One term per unordered partition of the half-edges at a vertex into two
    parts (the first half-edge stays on the old vertex).  The new vertex is
    appended last and the new edge, directed old -> new, last in edge order.
    Terms with a vertex below the minimal valence are dropped.
    """
    k = flavor.min_valence
    new = gen.v
    for w in range(gen.v):
        halves = _half_edges(gen, w)
        rest = halves[1:]
        for size in range(len(rest) + 1):
            for moved in itertools.combinations(rest, size):
                if size + 1 < k or len(halves) - size + 1 < k:
                    continue
                edges = [list(e) for e in gen.edges]
                hairs = list(gen.hairs)
                for kind, idx, end in moved:
                    if kind == "e":
                        edges[idx][end] = new
                    else:
                        hairs[idx] = new
                edges.append([w, new])
                yield OrientedGenerator(gen.v + 1, tuple(map(tuple, edges)), tuple(hairs))


def split_terms(gen: OrientedGenerator, flavor: Flavor, convention: str = STANDARD) -> dict:
    """Differential of ``gen`` as ``{canonical shape: coefficient}``, zeros removed."""
    out = {}
    for term in raw_splits(gen, flavor):
        cf = canonical_form(term, flavor)
        if cf is None:
            continue
        canon, sign = cf
        if convention == UNSIGNED:
            sign = 1
        key = canon.shape
        out[key] = out.get(key, 0) + sign
    return {s: c for s, c in out.items() if c}


def build_matrix(src: BasisSlice, dst: BasisSlice, convention: str = STANDARD) -> SparseIntMatrix:
    """Matrix of the differential; column j is the image of ``src.gens[j]``."""
    if (src.flavor, src.g, src.h) != (dst.flavor, dst.g, dst.h) or dst.d != src.d - 1:
        raise ValueError("slices are not adjacent pieces of one sector")
    index = dst.index()
    entries = {}
    for j, gen in enumerate(src.gens):
        for shape, c in split_terms(gen, src.flavor, convention).items():
            try:
                i = index[shape]
            except KeyError:
                raise ExhaustivenessError(
                    f"split of {gen} produced {shape} (degree {degree(shape, src.flavor)}) "
                    f"missing from slice d={dst.d}"
                ) from None
            entries[i, j] = c
    return SparseIntMatrix(len(dst), len(src), entries)


def check_d_squared(flavor: Flavor, g: int, h: int, d: int, caps: Caps = DEFAULT_CAPS,
                    convention: str = STANDARD):
    """None if the composite C_d -> C_{d-2} vanishes, else the first bad source generator."""
    s0 = enumerate_slice(flavor, g, h, d, caps)
    if not len(s0):
        return None
    s1 = enumerate_slice(flavor, g, h, d - 1, caps)
    s2 = enumerate_slice(flavor, g, h, d - 2, caps)
    prod = build_matrix(s1, s2, convention) @ build_matrix(s0, s1, convention)
    if prod.is_zero():
        return None
    col = min(c for _, c in prod.entries)
    return s0.gens[col]


def contraction_terms(gen: OrientedGenerator, flavor: Flavor) -> dict:
    """Edge contraction, the adjoint direction; used only as a homology cross-check.

    Contracting edge ``t -> h`` merges ``h`` into ``t``.  For odd ``n`` the
    surviving vertex order is restored by moving ``h`` last first, mirroring
    the splitting convention.  Tadpoles are not contracted.
    """
    out = {}
    for idx, (t, h) in enumerate(gen.edges):
        if t == h:
            continue
        sign = 1
        edges = list(gen.edges)
        # bring the contracted edge to the end (edge order matters for even n)
        if flavor.edge_odd and (len(edges) - 1 - idx) % 2:
            sign = -sign
        del edges[idx]
        # relabel h -> last, then identify it with t
        v = gen.v
        perm = list(range(v))
        for x in range(h + 1, v):
            perm[x] = x - 1
        perm[h] = v - 1
        if flavor.vertex_odd and (v - 1 - h) % 2:
            sign = -sign
        tt = perm[t]
        edges = [(perm[a], perm[b]) for a, b in edges]
        hairs = [perm[x] for x in gen.hairs]
        edges = [(tt if a == v - 1 else a, tt if b == v - 1 else b) for a, b in edges]
        hairs = [tt if x == v - 1 else x for x in hairs]
        merged = OrientedGenerator(v - 1, tuple(edges), tuple(hairs))
        cf = canonical_form(merged, flavor)
        if cf is None:
            continue
        canon, s = cf
        key = canon.shape
        out[key] = out.get(key, 0) + sign * s
    return {s: c for s, c in out.items() if c}
