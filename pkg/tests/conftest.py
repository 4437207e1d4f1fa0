import itertools
import random

import pytest

from graphhom.graphs import OrientedGenerator


def _parity(seq):
    """Parity of a permutation by counting inversions."""
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def automorphism_signs(gen, flavor):
    """Every orientation sign an automorphism of ``gen`` can induce, by brute force.

    Tries all vertex permutations, all edge bijections compatible with them
    (both directions for tadpoles) and all hair bijections.
    """
    v, edges, hairs = gen.v, list(gen.edges), list(gen.hairs)
    signs = set()
    for sigma in itertools.permutations(range(v)):
        # candidate images for each edge: (target index, flipped)
        options = []
        for t, h in edges:
            a, b = sigma[t], sigma[h]
            opts = []
            for k, (tt, hh) in enumerate(edges):
                if (tt, hh) == (a, b):
                    opts.append((k, False))
                if (tt, hh) == (b, a):
                    opts.append((k, True))
            options.append(opts)
        for choice in itertools.product(*options):
            targets = [k for k, _ in choice]
            if len(set(targets)) != len(targets):
                continue
            hair_opts = [[k for k, y in enumerate(hairs) if y == sigma[x]] for x in hairs]
            for hchoice in itertools.product(*hair_opts):
                if len(set(hchoice)) != len(hchoice):
                    continue
                s = 1
                if flavor.edge_odd:
                    s *= _parity(targets)
                if flavor.vertex_odd:
                    s *= _parity(list(sigma)) * (-1) ** sum(f for _, f in choice)
                if flavor.hair_odd:
                    s *= _parity(list(hchoice))
                signs.add(s)
    return signs


def random_relabel(gen, flavor, rng):
    """Relabel vertices, reorder edges and hairs, reverse some edges.

    Returns the new generator and the orientation sign of the map, computed
    straight from the definition.
    """
    v = gen.v
    sigma = list(range(v))
    rng.shuffle(sigma)
    order = list(range(len(gen.edges)))
    rng.shuffle(order)
    flips = [rng.random() < 0.5 for _ in gen.edges]
    horder = list(range(len(gen.hairs)))
    rng.shuffle(horder)
    new_edges = []
    for pos in order:
        t, h = gen.edges[pos]
        a, b = sigma[t], sigma[h]
        new_edges.append((b, a) if flips[pos] else (a, b))
    new_hairs = [sigma[gen.hairs[i]] for i in horder]
    s = 1
    if flavor.edge_odd:
        s *= _parity(order)
    if flavor.vertex_odd:
        s *= _parity(sigma)
        s *= (-1) ** sum(flips)
    if flavor.hair_odd:
        s *= _parity(horder)
    return OrientedGenerator(v, tuple(new_edges), tuple(new_hairs)), s


@pytest.fixture
def rng():
    return random.Random(20170130)
