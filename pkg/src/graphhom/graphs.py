"""Graph shapes, orientation signs and canonical forms.

A generator of GC_n^2 or HGC_{m,n} is a connected multigraph (tadpoles and
multiple edges allowed) together with orientation data.  We always carry a
fully labeled representative:

* vertices ``0..v-1``,
* an ordered list of directed edges ``(tail, head)``,
* an ordered list of hairs, each hair given by the vertex it sits on.

Relabeling acts by a sign determined by the parities of the flavor::

    edges odd      (n even)      -> sign of the edge permutation
    vertices odd   (n odd)       -> sign of the vertex permutation
                                    times (-1)^(reversed edges)
    hairs odd      (n - m even)  -> sign of the hair permutation

A generator vanishes iff some automorphism acts by -1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

GC = "GC"
HGC = "HGC"

#: bumped whenever a change alters degrees, signs or enumeration results
CONVENTION_VERSION = "graphhom-conv-1"


@dataclass(frozen=True)
class Flavor:
    """Complex kind plus the dimensions ``m`` (source) and ``n`` (target).

    ``min_valence`` is 2 for the Kontsevich complex GC_n^2 by default and may
    be raised to 3; hairy complexes always use 3.
    """

    kind: str
    n: int
    m: Optional[int] = None
    min_valence: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (GC, HGC):
            raise ValueError(f"unknown complex kind {self.kind!r}")
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.kind == GC:
            if self.m is not None:
                raise ValueError("GC flavor takes no m")
            if self.min_valence is None:
                object.__setattr__(self, "min_valence", 2)
            if self.min_valence not in (2, 3):
                raise ValueError("GC min_valence must be 2 or 3")
        else:
            if self.m is None or not 1 <= self.m <= self.n:
                raise ValueError("HGC flavor needs 1 <= m <= n")
            if self.min_valence is None:
                object.__setattr__(self, "min_valence", 3)
            if self.min_valence != 3:
                raise ValueError("HGC min_valence must be 3")

    @classmethod
    def gc(cls, n, min_valence=2):
        return cls(GC, n, None, min_valence)

    @classmethod
    def hgc(cls, m, n):
        return cls(HGC, n, m)

    @property
    def hairy(self) -> bool:
        return self.kind == HGC

    @property
    def edge_odd(self) -> bool:
        return self.n % 2 == 0

    @property
    def vertex_odd(self) -> bool:
        return self.n % 2 == 1

    @property
    def hair_odd(self) -> bool:
        return self.kind == HGC and (self.n - self.m) % 2 == 0

    def as_dict(self) -> dict:
        return {"kind": self.kind, "m": self.m, "n": self.n, "min_valence": self.min_valence}

    def __str__(self):
        if self.kind == GC:
            return f"GC_{self.n}^{self.min_valence}"
        return f"HGC_{self.m},{self.n}"


@dataclass(frozen=True, order=True)
class GraphShape:
    """Unlabeled-orientation multigraph.

    ``edges`` is a sorted tuple of pairs ``(a, b)`` with ``a <= b`` (``a == b``
    is a tadpole); ``hairs[i]`` is the number of hairs on vertex ``i``.
    """

    v: int
    edges: tuple = ()
    hairs: tuple = field(default=None)

    def __post_init__(self):
        edges = tuple(sorted((min(a, b), max(a, b)) for a, b in self.edges))
        object.__setattr__(self, "edges", edges)
        hairs = (0,) * self.v if self.hairs is None else tuple(self.hairs)
        if len(hairs) != self.v:
            raise ValueError("hairs must list one count per vertex")
        object.__setattr__(self, "hairs", hairs)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def h(self) -> int:
        return sum(self.hairs)

    def valences(self) -> list:
        val = list(self.hairs)
        for a, b in self.edges:
            val[a] += 1
            val[b] += 1
        return val

    def is_connected(self) -> bool:
        return _connected(self.v, self.edges)

    def sort_key(self):
        return (self.v, self.edges, self.hairs)


class OrientedGenerator(NamedTuple):
    """A labeled graph: directed edges in order, hairs in order."""

    v: int
    edges: tuple  # ((tail, head), ...)
    hairs: tuple = ()  # (vertex, ...)

    @property
    def shape(self) -> GraphShape:
        counts = [0] * self.v
        for x in self.hairs:
            counts[x] += 1
        return GraphShape(self.v, self.edges, tuple(counts))

    @classmethod
    def from_shape(cls, shape: GraphShape) -> "OrientedGenerator":
        hairs = tuple(x for x in range(shape.v) for _ in range(shape.hairs[x]))
        return cls(shape.v, tuple(shape.edges), hairs)


def _connected(v, edges) -> bool:
    if v == 0:
        return False
    parent = list(range(v))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = v
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps == 1


def loop_order(shape: GraphShape) -> int:
    """First Betti number ``e - v + 1`` of a connected graph."""
    return shape.e - shape.v + 1


def degree(shape: GraphShape, flavor: Flavor) -> int:
    """Homological degree; the vertex-splitting differential lowers it by one."""
    n = flavor.n
    if flavor.kind == GC:
        return (n - 1) * shape.e - n * (shape.v - 1)
    m = flavor.m
    return (n - 1) * shape.e - n * shape.v + (n - m - 1) * shape.h + m


def validate(shape: GraphShape, flavor: Flavor) -> list:
    """Return the list of violated conditions; empty means valid."""
    problems = []
    if shape.v < 1:
        return ["no vertices"]
    if any(not (0 <= a < shape.v and 0 <= b < shape.v) for a, b in shape.edges):
        problems.append("edge endpoint out of range")
        return problems
    if any(c < 0 for c in shape.hairs):
        problems.append("negative hair count")
    if not shape.is_connected():
        problems.append("disconnected")
    if flavor.kind == GC:
        if shape.h:
            problems.append("hairs on GC graph")
        if loop_order(shape) < 1:
            problems.append(f"loop order {loop_order(shape)} < 1")
    elif shape.h < 1:
        problems.append("no hairs on HGC graph")
    low = [i for i, x in enumerate(shape.valences()) if x < flavor.min_valence]
    if low:
        problems.append(f"valence < {flavor.min_valence} at vertices {low}")
    return problems


def perm_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given in one-line notation."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------- labeling


def _refine(colors, nbrs):
    """Color refinement until the partition is equitable.

    Colors are small ints ranked by signature, so the result is equivariant
    under relabeling of the input.
    """
    ncells = len(set(colors))
    while True:
        sigs = [
            (colors[u], tuple(sorted((colors[w], c) for w, c in nbrs[u])))
            for u in range(len(colors))
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncells:
            return colors
        ncells = len(rank)


def _leaf_key(perm, edges, hairs):
    v = len(perm)
    new_hairs = [0] * v
    for x in range(v):
        new_hairs[perm[x]] = hairs[x]
    new_edges = sorted(
        (perm[a], perm[b]) if perm[a] <= perm[b] else (perm[b], perm[a]) for a, b in edges
    )
    return (tuple(new_edges), tuple(new_hairs))


@lru_cache(maxsize=200_000)
def canonical_labelings(shape: GraphShape):
    """All vertex relabelings sending ``shape`` to its canonical form.

    Individualization-refinement with the initial partition by
    (valence, hair count, tadpole count), exhaustive over each
    non-singleton cell.  Returns ``(canonical_shape, perms)``; ``perms``
    differ from each other exactly by automorphisms of the shape.
    """
    v = shape.v
    mult = {}
    tadpoles = [0] * v
    for a, b in shape.edges:
        if a == b:
            tadpoles[a] += 1
        else:
            mult[a, b] = mult.get((a, b), 0) + 1
    nbrs = [[] for _ in range(v)]
    for (a, b), c in mult.items():
        nbrs[a].append((b, c))
        nbrs[b].append((a, c))
    val = shape.valences()
    init = [(val[x], shape.hairs[x], tadpoles[x]) for x in range(v)]
    rank = {s: i for i, s in enumerate(sorted(set(init)))}
    colors = _refine([rank[s] for s in init], nbrs)

    best_key = None
    best = []
    stack = [colors]
    while stack:
        colors = stack.pop()
        if len(set(colors)) == v:
            key = _leaf_key(colors, shape.edges, shape.hairs)
            if best_key is None or key < best_key:
                best_key, best = key, [tuple(colors)]
            elif key == best_key:
                best.append(tuple(colors))
            continue
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for u in range(v):
            if colors[u] != target:
                continue
            # u goes first within its cell
            ind = [2 * c + (1 if c == target and x != u else 0) for x, c in enumerate(colors)]
            r = {s: i for i, s in enumerate(sorted(set(ind)))}
            stack.append(_refine([r[s] for s in ind], nbrs))
    edges, hairs = best_key
    return GraphShape(v, edges, hairs), tuple(sorted(best))


def relabel_sign(gen: OrientedGenerator, perm, flavor: Flavor) -> int:
    """Sign relating ``gen`` to the sorted representative of its image under ``perm``.

    The target representative lists edges sorted by endpoint pair, each
    directed from the smaller to the larger label, and hairs sorted by vertex.
    """
    sign = 1
    flips = 0
    keyed = []
    for idx, (t, h) in enumerate(gen.edges):
        a, b = perm[t], perm[h]
        if a > b:
            a, b = b, a
            flips += 1
        keyed.append((a, b, idx))
    if flavor.edge_odd:
        keyed.sort()
        sign *= perm_sign([k[2] for k in keyed])
    if flavor.vertex_odd:
        sign *= perm_sign(perm)
        if flips % 2:
            sign = -sign
    if flavor.hair_odd and len(gen.hairs) > 1:
        order = sorted(range(len(gen.hairs)), key=lambda i: (perm[gen.hairs[i]], i))
        sign *= perm_sign(order)
    return sign


def _locally_killed(shape: GraphShape, flavor: Flavor) -> bool:
    """Vanishing forced by a symmetry that fixes every vertex."""
    if flavor.edge_odd and len(set(shape.edges)) < len(shape.edges):
        return True  # swapping two parallel edges
    if flavor.vertex_odd and any(a == b for a, b in shape.edges):
        return True  # reversing a tadpole
    if flavor.hair_odd and any(c > 1 for c in shape.hairs):
        return True  # swapping two hairs on one vertex
    return False


def is_zero(shape: GraphShape, flavor: Flavor) -> bool:
    """True iff the orientation generator of ``shape`` is killed by symmetry."""
    return _is_zero(shape, flavor.edge_odd, flavor.vertex_odd, flavor.hair_odd)


@lru_cache(maxsize=200_000)
def _is_zero(shape, edge_odd, vertex_odd, hair_odd):
    flavor = _ParityView(edge_odd, vertex_odd, hair_odd)
    if _locally_killed(shape, flavor):
        return True
    gen = OrientedGenerator.from_shape(shape)
    _, perms = canonical_labelings(shape)
    signs = {relabel_sign(gen, p, flavor) for p in perms}
    return len(signs) > 1


class _ParityView(NamedTuple):
    edge_odd: bool
    vertex_odd: bool
    hair_odd: bool


def canonical_form(gen: OrientedGenerator, flavor: Flavor):
    """Return ``None`` if ``gen`` is zero, else ``(canonical_generator, sign)``.

    ``gen == sign * canonical_generator`` in the complex.
    """
    shape = gen.shape
    canon, perms = canonical_labelings(shape)
    if is_zero(canon, flavor):
        return None
    sign = relabel_sign(gen, perms[0], flavor)
    return OrientedGenerator.from_shape(canon), sign


def canonical_shape(shape: GraphShape) -> GraphShape:
    return canonical_labelings(shape)[0]


# a few named shapes used throughout docs and tests


def theta() -> GraphShape:
    return GraphShape(2, ((0, 1),) * 3)


def polygon(j: int) -> GraphShape:
    """Cycle with j vertices and j edges; j=1 is a tadpole, j=2 a double edge."""
    if j == 1:
        return GraphShape(1, ((0, 0),))
    return GraphShape(j, tuple((i, (i + 1) % j) for i in range(j)))


def star(h: int) -> GraphShape:
    """One vertex carrying h hairs (h=3 is the tripod)."""
    return GraphShape(1, (), (h,))


def hairy_tadpole() -> GraphShape:
    return GraphShape(1, ((0, 0),), (1,))
