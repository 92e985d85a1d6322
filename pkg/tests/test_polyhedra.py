import random
from fractions import Fraction

import pytest

from oracles import brute_in_cone, random_simplicial
from toricert.exact import Lattice, dot, rank
from toricert.polyhedra import (
    Cone,
    EmptyPolytopeError,
    UnboundedPolytopeError,
    cone,
    cone_predicates,
    corner_cone,
    double_description,
    dual_cone,
    facets,
    homogenization,
    intersect,
    multiplicity,
    polytope_vertices,
)

QUADRANT = cone((1, 0), (0, 1))
TRIANGLE_HS = [((0, 1), 0), ((1, 0), 0), ((-1, -3), -1)]


@pytest.mark.parametrize("gens, expected", [
    ([(1, 0), (0, 1)], [(0, 1), (1, 0)]),
    ([(1, 0), (1, 2)], [(0, 1), (2, -1)]),
    ([(-1, 0), (-3, 1)], [(-1, -3), (0, 1)]),
])
def test_dual_cone_examples(gens, expected):
    assert list(dual_cone(cone(*gens)).rays) == expected


def test_dual_cone_rejects_degenerate_input():
    with pytest.raises(ValueError):
        dual_cone(cone((1, 0)))
    with pytest.raises(ValueError):
        dual_cone(Cone.from_generators([(1, 0)], lineality=[(0, 1)]))


def test_dual_cone_involution_random():
    rng = random.Random(11)
    for _ in range(100):
        c = cone(*random_simplicial(rng, rng.randint(2, 4)))
        assert dual_cone(dual_cone(c)) == c


def test_facets():
    fs = facets(cone((1, 0), (1, 2)))
    assert [(u, f.rays) for u, f in fs] == [((0, 1), ((1, 0),)), ((2, -1), ((1, 2),))]
    assert len(facets(cone((1, 0, 0), (0, 1, 0), (0, 0, 1)))) == 3
    assert {f.rays for _, f in facets(QUADRANT)} == {((1, 0),), ((0, 1),)}


def test_facet_normals_vanish_on_dim_minus_one_rays():
    rng = random.Random(5)
    for _ in range(50):
        d = rng.randint(2, 4)
        gens = [tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(d + 2)]
        c = cone(*gens)
        if not c.pointed or c.dim < 2:
            continue
        for r in c.rays:
            assert all(dot(u, r) >= 0 for u in c.facet_normals)
        for u in c.facet_normals:
            assert rank([r for r in c.rays if dot(u, r) == 0]) == c.dim - 1


@pytest.mark.parametrize("gens, unimodular, mult", [
    ([(1, 0), (0, 1)], True, 1),
    ([(1, 0), (1, 2)], False, 2),
    ([(1, 0), (-1, -3)], False, 3),
])
def test_cone_predicates(gens, unimodular, mult):
    p = cone_predicates(cone(*gens), Lattice.standard(2))
    assert p.simplicial and p.pointed
    assert p.unimodular is unimodular
    assert p.multiplicity == mult


def test_multiplicity_in_sublattice():
    gp = Lattice.from_generators([(1, 1), (2, 0)])
    assert multiplicity([(1, 1), (1, -1)], gp) == 1
    assert multiplicity([(2, 0), (0, 2)], gp) == 2


def test_intersections():
    assert intersect(QUADRANT, QUADRANT) == QUADRANT
    assert intersect(QUADRANT, cone((-1, 0), (-3, 1))).rays == ()
    assert intersect(cone((1, 0), (1, 2)), cone((0, 1), (1, 1))) == cone((1, 1), (1, 2))


def test_intersection_membership_random():
    rng = random.Random(3)
    for _ in range(20):
        ga, gb = random_simplicial(rng, 3), random_simplicial(rng, 3)
        a, b = cone(*ga), cone(*gb)
        both = intersect(a, b)
        for _ in range(50):
            x = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(3))
            assert both.contains(x) == (brute_in_cone(ga, x) and brute_in_cone(gb, x))


def test_double_description_with_lineality():
    rays, lin = double_description([(1, 0, 0)], 3)
    assert len(lin) == 2
    assert len(rays) == 1


def test_polytope_vertices():
    square = [((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)]
    assert polytope_vertices(square).vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    tri = polytope_vertices(TRIANGLE_HS)
    assert tri.vertices == ((0, 0), (0, Fraction(1, 3)), (1, 0))
    with pytest.raises(EmptyPolytopeError):
        polytope_vertices([((1,), 1), ((-1,), 0)])
    with pytest.raises(UnboundedPolytopeError):
        polytope_vertices([((1, 0), 0), ((0, 1), 0)])


def test_corner_cones():
    tri = polytope_vertices(TRIANGLE_HS)
    assert corner_cone(tri, (0, 0)) == QUADRANT
    assert corner_cone(tri, (1, 0)) == cone((-1, 0), (-3, 1))
    square = polytope_vertices([((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)])
    assert corner_cone(square, (0, 0)) == QUADRANT
    with pytest.raises(ValueError):
        corner_cone(tri, (1, 1))


def test_homogenization_of_triangle():
    tri = polytope_vertices(TRIANGLE_HS)
    assert homogenization(tri) == cone((0, 0, 1), (1, 0, 1), (0, 1, 3))


def test_vertices_satisfy_halfspaces():
    rng = random.Random(9)
    for _ in range(20):
        hs = [((1, 0), -rng.randint(1, 5)), ((-1, 0), -rng.randint(1, 5)), ((0, 1), -rng.randint(1, 5)),
              ((0, -1), -rng.randint(1, 5)), ((rng.randint(-3, 3), rng.randint(-3, 3)), -rng.randint(1, 5))]
        p = polytope_vertices(hs)
        assert all(p.contains(v) for v in p.vertices)
        assert len(p.vertices) >= 3
