import random
from itertools import product

import pytest

from oracles import brute_hilbert_basis
from toricert.exact import Lattice, rank
from toricert.monoid import (
    AffineMonoid,
    classify,
    group_of_differences,
    hilbert_basis,
    parallelepiped_points,
    placing_triangulation,
    same_monoid,
)
from toricert.pipeline import seed_monoid_Mr
from toricert.polyhedra import Cone, cone

GP_M2 = Lattice.from_generators([(1, 1), (2, 0), (0, 2)])


def test_hilbert_examples():
    assert hilbert_basis(cone((1, 0), (0, 1))) == [(0, 1), (1, 0)]
    assert hilbert_basis(cone((1, 0), (1, 2))) == [(1, 0), (1, 1), (1, 2)]
    assert hilbert_basis(cone((1, 0), (0, 1)), GP_M2) == [(0, 2), (1, 1), (2, 0)]


def test_hilbert_rejects_non_pointed():
    with pytest.raises(ValueError):
        hilbert_basis(Cone.from_generators([(1, 0)], lineality=[(0, 1)]))


def test_hilbert_of_non_simplicial_cone():
    # square pyramid over the unit square at height 1
    c = cone((0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1))
    assert hilbert_basis(c) == [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    c = cone((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1))
    assert hilbert_basis(c) == [(-1, 0, 1), (0, -1, 1), (0, 0, 1), (0, 1, 1), (1, 0, 1)]


def test_hilbert_in_lower_dimensional_cone():
    assert hilbert_basis(cone((2, 0, 0), (0, 2, 0))) == [(0, 1, 0), (1, 0, 0)]
    assert hilbert_basis(cone((1, 1, 0), (1, -1, 2))) == [(1, -1, 2), (1, 0, 1), (1, 1, 0)]


def test_parallelepiped_size_is_multiplicity():
    pts = parallelepiped_points([(1, 0), (-1, -3)])
    assert len(pts) == 3
    assert sorted(p for p, _ in pts) == [(0, -2), (0, -1), (0, 0)]


def test_placing_triangulation_covers_square_cone():
    rays = [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    simplices = placing_triangulation(rays)
    assert len(simplices) == 2
    assert all(rank([rays[i] for i in s]) == 3 for s in simplices)


def test_group_of_differences():
    assert group_of_differences(AffineMonoid.from_generators([(1, 0), (0, 1)])) == Lattice.standard(2)
    assert group_of_differences(seed_monoid_Mr(2)) == GP_M2
    assert group_of_differences(AffineMonoid.from_generators([(0, 2)])) == Lattice.from_generators([(0, 2)])


def test_classify_examples():
    free = classify(AffineMonoid.from_generators([(1, 0), (0, 1)]))
    assert free.positive and free.normal and free.simplicial and free.free
    m2 = classify(seed_monoid_Mr(2))
    assert m2.positive and m2.normal and m2.simplicial and not m2.free


def test_monoid_generated_by_1_0_and_1_2():
    m = AffineMonoid.from_generators([(1, 0), (1, 2)])
    # (1,1) lies in the cone and in Z^2 but not in the monoid
    assert m.cone.contains((1, 1)) and not m.contains((1, 1))
    # normality is decided relative to gp(M), which misses (1,1)
    assert m.flags.normal
    assert not AffineMonoid.normal(m.cone).flags.free


def test_non_normal_monoid():
    m = AffineMonoid.from_generators([(2, 0), (3, 0)], 2)
    assert not m.flags.normal
    assert m.contains((5, 0)) and not m.contains((1, 0))


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_seed_monoids_are_normal_and_not_free(r):
    m = seed_monoid_Mr(r)
    assert len(m.hilbert_basis) == r + 1
    assert m.flags.normal and not m.flags.free and m.flags.simplicial


def test_same_monoid():
    a = AffineMonoid.normal(cone((1, 0), (0, 1)), GP_M2)
    b = seed_monoid_Mr(2)
    assert same_monoid(a, b)
    assert not same_monoid(a, AffineMonoid.normal(cone((1, 0), (0, 1))))


def test_hilbert_basis_minimal_and_generating():
    rng = random.Random(17)
    for _ in range(30):
        d = rng.randint(2, 3)
        while True:
            gens = [tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(d)]
            if rank(gens) == d:
                break
        c = cone(*gens)
        hb = hilbert_basis(c)
        hs = set(hb)
        for a in hb:
            for b in hb:
                assert tuple(x + y for x, y in zip(a, b)) not in hs
        m = AffineMonoid.normal(c)
        for x in product(range(-4, 5), repeat=d):
            if any(x) and c.contains(x):
                assert m.contains(x)


def test_hilbert_matches_brute_force():
    rng = random.Random(23)
    for _ in range(40):
        d = rng.randint(1, 3)
        k = rng.randint(1, d)
        while True:
            gens = [tuple(rng.randint(-6, 6) for _ in range(d)) for _ in range(k)]
            if rank(gens) == k:
                break
        assert set(hilbert_basis(cone(*gens))) == brute_hilbert_basis(gens)
