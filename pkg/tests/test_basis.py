import pytest

from graphhom.basis import (
    BasisSlice,
    CapExceeded,
    Caps,
    degree_support,
    enumerate_slice,
    euler_characteristic,
    slice_counts,
)
from graphhom.graphs import Flavor, GraphShape, canonical_shape, is_zero, star, theta


def test_slice_counts_examples():
    assert slice_counts(Flavor.gc(3), 2, 0, 3) == (3, 2)
    assert slice_counts(Flavor.gc(3), 2, 0, 10) is None
    assert slice_counts(Flavor.hgc(1, 3), 0, 3, 1) == (0, 1)


def test_enumerate_examples():
    fl = Flavor.gc(3)
    gens = enumerate_slice(fl, 2, 0, 3).gens
    assert [g.shape for g in gens] == [theta()]
    # the dumbbell lives in the same (e, v) but dies for odd n
    dumbbell = canonical_shape(GraphShape(2, [(0, 0), (0, 1), (1, 1)]))
    assert is_zero(dumbbell, fl)
    assert len(enumerate_slice(fl, 2, 0, 10)) == 0
    assert [g.shape for g in enumerate_slice(Flavor.hgc(1, 4), 0, 3, 3).gens] == [star(3)]


def test_two_vertex_three_edge_brute_force():
    # v=2, e=3 multigraphs: every multiset of three pairs from {00, 01, 11}
    from itertools import combinations_with_replacement

    pairs = [(0, 0), (0, 1), (1, 1)]
    classes = set()
    for edges in combinations_with_replacement(pairs, 3):
        s = GraphShape(2, edges)
        if s.is_connected() and min(s.valences()) >= 2:
            classes.add(canonical_shape(s))
    # theta, dumbbell, and tadpole + double edge
    assert len(classes) == 3
    for n, expected in ((3, {theta()}), (2, set())):
        fl = Flavor.gc(n)
        assert {c for c in classes if not is_zero(c, fl)} == expected


NAIVE_CASES = (
    [(Flavor.gc(n, k), g, 0) for n in (2, 3) for k in (2, 3) for g in (1, 2, 3)]
    + [(Flavor.hgc(m, n), g, h) for m, n in ((1, 3), (1, 4), (2, 3), (2, 4))
       for g in range(4) for h in range(1, 5 - g)]
)


@pytest.mark.parametrize("fl,g,h", NAIVE_CASES, ids=lambda x: str(x))
def test_exhaustive_against_naive(fl, g, h):
    bottom, top = degree_support(fl, g, h)
    lo = top - 8 if bottom is None else bottom
    for d in range(lo, top + 1):
        counts = slice_counts(fl, g, h, d)
        if counts is None or counts[1] > 4:
            continue
        fast = enumerate_slice(fl, g, h, d)
        slow = enumerate_slice(fl, g, h, d, naive=True)
        assert fast.gens == slow.gens, (fl, g, h, d)


def test_deterministic():
    fl = Flavor.gc(2)
    a = enumerate_slice(fl, 3, 0, -1)
    b = enumerate_slice(fl, 3, 0, -1)
    assert a == b and len(a) > 10
    assert list(a.gens) == sorted(a.gens, key=lambda gen: gen.shape.sort_key())


def test_slice_contents_have_stated_grading():
    from graphhom.graphs import degree, loop_order, validate

    for fl, g, h in NAIVE_CASES:
        bottom, top = degree_support(fl, g, h)
        lo = top - 5 if bottom is None else bottom
        for d in range(lo, top + 1):
            for gen in enumerate_slice(fl, g, h, d).gens:
                s = gen.shape
                assert loop_order(s) == g and s.h == h and degree(s, fl) == d
                assert validate(s, fl) == [] and not is_zero(s, fl)


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_slice(Flavor.gc(2), 3, 0, -3, Caps(v=6, e=12))
    assert Caps.parse("v=4,e=7") == Caps(4, 7)
    assert Caps.parse("e=5") == Caps(10, 5)
    with pytest.raises(ValueError):
        Caps.parse("x=3")


def test_euler_examples():
    fl = Flavor.hgc(1, 3)
    # tripod is the only graph and dies for this parity
    assert euler_characteristic(fl, 0, 3, 1, 1) == 0
    assert euler_characteristic(Flavor.hgc(1, 4), 0, 3, 3, 3) == -1
    # (0,1) has no valid graphs at all
    assert euler_characteristic(fl, 0, 1, -5, 5) == 0
    gc = Flavor.gc(3, 3)
    bottom, top = degree_support(gc, 2, 0)
    assert euler_characteristic(gc, 2, 0, bottom, top) == -1  # theta in odd degree 3


def test_euler_precondition():
    with pytest.raises(ValueError):
        euler_characteristic(Flavor.gc(3, 3), 3, 0, 5, 6)
    with pytest.raises(ValueError):
        euler_characteristic(Flavor.gc(3, 2), 3, 0, -10, 6)


def test_slices_are_finite_and_typed():
    s = enumerate_slice(Flavor.hgc(1, 3), 2, 2, 2)
    assert isinstance(s, BasisSlice) and len(s) == len(s.index())
