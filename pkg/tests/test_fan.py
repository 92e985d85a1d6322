import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import sympy_det
from toricert.configuration import mirror_configuration
from toricert.fan import (
    AdmissibilityViolation,
    Fan,
    FanError,
    IncompleteFanError,
    NothingToSubdivide,
    SupportFunction,
    closure_fan_with_polytope,
    delta_simplex,
    fan_of_open_variety,
    fan_predicates,
    face_property_violations,
    is_complete,
    pick_subdivision_ray,
    projectivity_certificate,
    resolve_except_distinguished,
    stellar_subdivide,
    validate_support_function,
)
from toricert.monoid import AffineMonoid
from toricert.polyhedra import cone, corner_cone
from toricert.pipeline import _point_in_fan

PLANE = Fan.from_cones([[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]])


def toy_cfg():
    return mirror_configuration(AffineMonoid.normal(cone((1, 0), (0, 1))), (1, 0))


def toy_closure() -> Fan:
    return closure_fan_with_polytope(toy_cfg()).fan


def test_fan_is_canonical():
    f = Fan.from_cones([[(0, 2), (-1, -1)], [(1, 0), (0, 1)], [(-1, -1), (1, 0)]], distinguished=(1, 0))
    assert f.rays == ((-1, -1), (0, 1), (1, 0))
    assert f.cones == ((0, 1), (0, 2), (1, 2))
    assert f.distinguished == (0, 2)
    with pytest.raises(FanError):
        Fan.from_cones([[(1, 0), (0, 1)], [(0, 1), (1, 0)]])


def test_open_variety_fan_toy():
    f = fan_of_open_variety(toy_cfg())
    assert [set(f.cone_rays(i)) for i in range(2)] == [{(-1, -3), (0, 1)}, {(0, 1), (1, 0)}]
    assert f.distinguished == (0, 1)
    assert not is_complete(f)


def test_delta_simplex_toy():
    cfg = toy_cfg()
    p = delta_simplex(cfg)
    assert set(p.vertices) == {(0, 0), (1, 0), (0, Fraction(1, 3))}
    assert corner_cone(p, (1, 0)) == cone((-1, 0), (-3, 1))
    assert corner_cone(p, (0, 0)) == cfg.N_plus.cone


def test_closure_fan_toy():
    closure = closure_fan_with_polytope(toy_cfg())
    f = closure.fan
    assert f.rays == ((-1, -3), (0, 1), (1, 0))
    assert f.cones == ((0, 1), (0, 2), (1, 2))
    assert f.distinguished == (0, 2)
    assert set(closure.homogenization.rays) == {(0, 0, 1), (0, 1, 3), (1, 0, 1)}
    pred = fan_predicates(f, keep=f.distinguished)
    assert pred.complete and pred.simplicial
    assert pred.multiplicities == (1, 3, 1)
    assert pred.smooth_except == {1}
    assert not pred.smooth_outside(f.distinguished)


def test_predicates_examples():
    pred = fan_predicates(PLANE)
    assert pred.complete and pred.simplicial and not pred.smooth_except
    single = Fan.from_cones([[(1, 0), (0, 1)]])
    assert not fan_predicates(single).complete
    halves = Fan.from_cones([[(1, 0), (0, 1)], [(-1, 0), (0, -1)]])
    assert not is_complete(halves)


def test_multiplicities_match_determinants():
    f = toy_closure()
    for i, m in enumerate(fan_predicates(f).multiplicities):
        assert m == abs(sympy_det(f.cone_rays(i)))


def test_pick_subdivision_ray_examples():
    assert pick_subdivision_ray(cone((1, 0), (1, 2))) == (1, 1)
    assert pick_subdivision_ray(cone((1, 0), (-1, -3))) == (0, -1)
    with pytest.raises(NothingToSubdivide, match="nothing to subdivide"):
        pick_subdivision_ray(cone((1, 0), (0, 1)))


def test_stellar_examples():
    f = Fan.from_cones([[(1, 0), (1, 2)]])
    g = stellar_subdivide(f, (1, 1))
    assert [set(g.cone_rays(i)) for i in range(len(g))] == [{(1, 0), (1, 1)}, {(1, 1), (1, 2)}]
    assert not fan_predicates(g).smooth_except
    t = stellar_subdivide(toy_closure(), (0, -1))
    assert len(t) == 4 and not fan_predicates(t).smooth_except
    assert stellar_subdivide(PLANE, (1, 0)) == PLANE
    with pytest.raises(FanError):
        stellar_subdivide(f, (-1, 0))


def test_stellar_in_three_dimensions_preserves_faces():
    f = Fan.from_cones([[(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(1, 0, 0), (0, 1, 0), (0, 0, -1)]])
    g = stellar_subdivide(f, (1, 1, 0))
    assert len(g) == 4 and len(g.rays) == len(f.rays) + 1
    assert face_property_violations(g) == []


def test_face_property_detects_overlap():
    f = Fan.from_cones([[(1, 0), (0, 1)], [(1, 1), (-1, 1)]])
    assert face_property_violations(f) == [(0, 1)]
    assert face_property_violations(PLANE) == []


def test_resolution_toy():
    f = toy_closure()
    out, history = resolve_except_distinguished(f)
    assert len(history) == 1
    assert history[0].ray == (0, -1)
    assert history[0].target_multiplicity == 3
    assert all(m < 3 for m in history[0].result_multiplicities)
    assert len(out) == 4 and not fan_predicates(out).smooth_except
    assert out.distinguished_ray_sets() == f.distinguished_ray_sets()


def test_resolution_of_smooth_fan_is_identity():
    out, history = resolve_except_distinguished(PLANE)
    assert out == PLANE and history == []


def test_resolution_refuses_to_invade_distinguished_cones():
    # the only new ray (1,1,0) of the target lies on its face shared with a distinguished cone
    target = [(1, 0, 0), (1, 2, 0), (0, 0, 1)]
    kept = [[(1, 0, 0), (1, 2, 0), (0, 0, -1)], [(1, 0, 0), (0, -1, 0), (0, 0, 1)]]
    f = Fan.from_cones([target] + kept, distinguished=(1, 2))
    with pytest.raises(AdmissibilityViolation):
        resolve_except_distinguished(f)
    out, history = resolve_except_distinguished(Fan.from_cones([target] + kept))
    assert [s.ray for s in history] == [(1, 1, 0)]


def test_resolution_cap():
    with pytest.raises(FanError, match="cap"):
        resolve_except_distinguished(Fan.from_cones([[(1, 0), (1, 5)]]), cap=1)


def test_projectivity_examples():
    sf = projectivity_certificate(PLANE)
    assert sf is not None and validate_support_function(PLANE, sf) == []
    out, _ = resolve_except_distinguished(toy_closure())
    sf = projectivity_certificate(out)
    assert sf is not None and validate_support_function(out, sf) == []
    with pytest.raises(IncompleteFanError):
        projectivity_certificate(Fan.from_cones([[(1, 0), (0, 1)], [(-1, 0), (0, -1)]]))


def test_support_function_validation_rejects_tampering():
    sf = projectivity_certificate(PLANE)
    flat = SupportFunction(tuple(0 for _ in sf.values), tuple((0, 0) for _ in sf.functionals))
    assert validate_support_function(PLANE, flat)
    wrong = SupportFunction(sf.values, sf.functionals[:-1])
    assert validate_support_function(PLANE, wrong)


def test_subdivision_preserves_support_on_samples():
    f = toy_closure()
    g = stellar_subdivide(f, (0, -1))
    rng = random.Random(5)
    for _ in range(500):
        x = tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(2))
        assert _point_in_fan(f, x) == _point_in_fan(g, x)
    bounded = Fan.from_cones([[(1, 0), (1, 3)]])
    sub = stellar_subdivide(bounded, pick_subdivision_ray(bounded.cone(0)))
    for _ in range(500):
        x = tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(2))
        assert _point_in_fan(bounded, x) == _point_in_fan(sub, x)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(-7, 7))
def test_resolving_two_dimensional_cones(a, b):
    # cone((0,1),(a,b)) resolves to unimodular pieces with strictly smaller multiplicities
    f = Fan.from_cones([[(0, 1), (a, b)]]) if a else None
    if f is None:
        return
    out, history = resolve_except_distinguished(f)
    assert not fan_predicates(out).smooth_except
    for step in history:
        assert all(m < step.target_multiplicity for m in step.result_multiplicities)
