"""Homology dimensions of graph complex sectors."""
from __future__ import annotations

from dataclasses import dataclass, field

from .basis import DEFAULT_CAPS, BasisSlice, Caps, enumerate_slice
from .differential import STANDARD, build_matrix
from .graphs import CONVENTION_VERSION, Flavor
from .rank import rank


@dataclass
class SectorChain:
    """Slices ``d_lo - 1 .. d_hi + 1`` of one (g, h) sector plus their differentials."""

    flavor: Flavor
    g: int
    h: int
    d_lo: int
    d_hi: int
    slices: dict = field(default_factory=dict)  # d -> BasisSlice
    matrices: dict = field(default_factory=dict)  # d -> matrix C_d -> C_{d-1}

    @classmethod
    def build(cls, flavor, g, h, d_lo, d_hi, caps=DEFAULT_CAPS, convention=STANDARD):
        h = h if flavor.hairy else 0
        chain = cls(flavor, g, h, d_lo, d_hi)
        for d in range(d_lo - 1, d_hi + 2):
            chain.slices[d] = enumerate_slice(flavor, g, h, d, caps)
        for d in range(d_lo, d_hi + 2):
            chain.matrices[d] = build_matrix(chain.slices[d], chain.slices[d - 1], convention)
        return chain

    def ranks(self, method="exact") -> dict:
        return {d: rank(M, method) for d, M in self.matrices.items()}

    def homology(self, method="exact") -> dict:
        rk = self.ranks(method)
        return {
            d: len(self.slices[d]) - rk[d] - rk[d + 1]
            for d in range(self.d_lo, self.d_hi + 1)
        }


def homology_dims(flavor: Flavor, g: int, h: int, d_lo: int, d_hi: int,
                  caps: Caps = DEFAULT_CAPS, method: str = "exact") -> dict:
    """``{d: dim H_d}`` for one sector over ``d_lo..d_hi``."""
    return SectorChain.build(flavor, g, h, d_lo, d_hi, caps).homology(method)


@dataclass
class HomologyTable:
    flavor: Flavor
    entries: dict = field(default_factory=dict)  # (g, h, d) -> dim
    caps: Caps = DEFAULT_CAPS
    convention_version: str = CONVENTION_VERSION
    covered: set = field(default_factory=set)  # sectors added, even with no degrees

    def add_sector(self, g, h, dims: dict):
        self.covered.add((g, h))
        for d, x in dims.items():
            if x < 0:
                raise ArithmeticError(f"negative homology dimension at {(g, h, d)}")
            self.entries[g, h, d] = x

    def sectors(self) -> list:
        return sorted(self.covered | {(g, h) for g, h, _ in self.entries})

    def sector(self, g, h) -> dict:
        return {d: x for (gg, hh, d), x in self.entries.items() if (gg, hh) == (g, h)}

    def nonzero(self):
        return sorted((k, x) for k, x in self.entries.items() if x)

    def rows(self):
        return [
            {"g": g, "h": h, "d": d, "dim": self.entries[g, h, d]}
            for g, h, d in sorted(self.entries)
        ]


def slice_sizes(flavor: Flavor, g: int, h: int, d_lo: int, d_hi: int, caps=DEFAULT_CAPS) -> dict:
    return {d: len(enumerate_slice(flavor, g, h, d, caps)) for d in range(d_lo, d_hi + 1)}


__all__ = ["BasisSlice", "HomologyTable", "SectorChain", "homology_dims", "slice_sizes"]
