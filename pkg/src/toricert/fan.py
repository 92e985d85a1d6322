"""Simplicial fans in the dual space: closure fans, stellar subdivision and resolution."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .configuration import BasicConfiguration, dual_common_facet
from .exact import (
    Lattice,
    Vector,
    dot,
    integer_kernel,
    inverse,
    is_integral,
    lattice_primitive,
    primitive,
    rank,
    solve_left,
    vec,
)
from .lp import strict_lp_certificate
from .monoid import hilbert_basis
from .polyhedra import (
    Cone,
    Polytope,
    corner_cone,
    dual_cone,
    homogenization,
    intersect,
    multiplicity,
    polytope_vertices,
)


class FanError(ValueError):
    pass


class NothingToSubdivide(FanError):
    pass


class AdmissibilityViolation(FanError):
    """A subdivision ray fell into one of the distinguished cones."""


class IncompleteFanError(FanError):
    pass


@dataclass(frozen=True)
class Fan:
    """A pure full-dimensional simplicial fan in canonical form.

    Rays are sorted primitive integer vectors, each maximal cone is a sorted
    tuple of ray indices, cones are sorted, and ``distinguished`` is a sorted
    pair of cone indices (or None).
    """

    ambient_dim: int
    rays: tuple[Vector, ...]
    cones: tuple[tuple[int, ...], ...]
    distinguished: tuple[int, int] | None = None
    lattice: Lattice = field(default=None, compare=False)

    def __post_init__(self):
        if self.lattice is None:
            object.__setattr__(self, "lattice", Lattice.standard(self.ambient_dim))

    @classmethod
    def from_cones(cls, cones: Iterable[Sequence[Sequence]], ambient_dim: int | None = None,
                   distinguished: Sequence[int] | None = None) -> "Fan":
        """Canonical fan from cones given by ray vectors; ``distinguished`` indexes ``cones``."""
        raw = [tuple(sorted({primitive(vec(r)) for r in c})) for c in cones]
        if not raw:
            raise FanError("a fan needs at least one maximal cone")
        n = ambient_dim if ambient_dim is not None else len(raw[0][0])
        for c in raw:
            for r in c:
                if not is_integral(r):
                    raise FanError(f"ray {r} is not integral")
        rays = sorted({r for c in raw for r in c})
        index = {r: i for i, r in enumerate(rays)}
        keyed = [tuple(sorted(index[r] for r in c)) for c in raw]
        if len(set(keyed)) != len(keyed):
            raise FanError("repeated maximal cone")
        order = sorted(keyed)
        dist = None
        if distinguished is not None:
            a, b = (order.index(keyed[i]) for i in distinguished)
            if a == b:
                raise FanError("distinguished cones must be distinct")
            dist = (min(a, b), max(a, b))
        return cls(n, tuple(rays), tuple(order), dist)

    @classmethod
    def from_indices(cls, rays: Sequence[Sequence], cones: Sequence[Sequence[int]],
                     distinguished: Sequence[int] | None = None) -> "Fan":
        rays = [vec(r) for r in rays]
        return cls.from_cones([[rays[i] for i in c] for c in cones], len(rays[0]), distinguished)

    def cone_rays(self, i: int) -> tuple[Vector, ...]:
        return tuple(self.rays[j] for j in self.cones[i])

    def cone(self, i: int) -> Cone:
        return Cone.from_generators(self.cone_rays(i), self.ambient_dim)

    def ray_sets(self) -> list[frozenset]:
        return [frozenset(self.cone_rays(i)) for i in range(len(self.cones))]

    def distinguished_ray_sets(self) -> tuple[frozenset, ...]:
        if self.distinguished is None:
            return ()
        return tuple(frozenset(self.cone_rays(i)) for i in self.distinguished)

    def __len__(self) -> int:
        return len(self.cones)


def _fan_from_ray_sets(n: int, sets: Sequence[Iterable[Vector]], dist_sets: Sequence[frozenset]) -> Fan:
    sets = [frozenset(s) for s in sets]
    dist = [sets.index(d) for d in dist_sets] if dist_sets else None
    return Fan.from_cones(sets, n, dist)


# ---------------------------------------------------------------------------
# fans attached to a configuration


def fan_of_open_variety(cfg: BasicConfiguration) -> Fan:
    """The two dual cones ``(R+N+)^op`` and ``(R+N-)^op``, glued along ``(Re + R+M)^op``."""
    plus, minus = dual_cone(cfg.N_plus.cone), dual_cone(cfg.N_minus.cone)
    common = dual_common_facet(cfg.M, cfg.e)
    meet = intersect(plus, minus)
    if meet != common or not any(plus.face(u) == common for u in plus.facet_normals):
        raise FanError("the two dual cones do not meet in (Re + R+M)^op")
    return Fan.from_cones([plus.rays, minus.rays], len(cfg.e), (0, 1))


def delta_simplex(cfg: BasicConfiguration) -> Polytope:
    """``(e + R+N-) ∩ R+N+`` as a bounded polytope."""
    hs = [(u, 0) for u in cfg.N_plus.cone.facet_normals]
    hs += [(u, dot(u, cfg.e)) for u in cfg.N_minus.cone.facet_normals]
    p = polytope_vertices(hs)
    n = len(cfg.e)
    if len(p.vertices) != n + 1:
        raise FanError(f"expected a simplex, got {len(p.vertices)} vertices")
    return p


@dataclass(frozen=True)
class ClosureFan:
    fan: Fan
    polytope: Polytope

    @property
    def homogenization(self) -> Cone:
        return homogenization(self.polytope)


def projective_closure_fan(cfg: BasicConfiguration) -> Fan:
    return closure_fan_with_polytope(cfg).fan


def closure_fan_with_polytope(cfg: BasicConfiguration) -> ClosureFan:
    """One maximal cone ``(-v + C_v)^op`` per vertex ``v`` of Delta."""
    p = delta_simplex(cfg)
    n = len(cfg.e)
    zero = tuple(0 for _ in range(n))
    cones = [dual_cone(corner_cone(p, v)).rays for v in p.vertices]
    dist = [p.vertices.index(zero), p.vertices.index(cfg.e)]
    if corner_cone(p, zero) != cfg.N_plus.cone or corner_cone(p, cfg.e) != cfg.N_minus.cone:
        raise FanError("corner cones of Delta do not match R+N+ and R+N-")
    fan = Fan.from_cones(cones, n, dist)
    if not fan_predicates(fan).complete:
        raise IncompleteFanError("closure fan is not complete")
    return ClosureFan(fan, p)


# ---------------------------------------------------------------------------
# predicates


@dataclass(frozen=True)
class FanPredicates:
    complete: bool
    simplicial: bool
    smooth_except: frozenset
    multiplicities: tuple[int, ...]

    def smooth_outside(self, keep: Iterable[int]) -> bool:
        return self.smooth_except <= frozenset(keep)


def walls(fan: Fan) -> dict[tuple[int, ...], list[int]]:
    """Codimension-one faces (as ray-index tuples) and the maximal cones containing them."""
    out: dict[tuple[int, ...], list[int]] = {}
    for ci, c in enumerate(fan.cones):
        for j in range(len(c)):
            out.setdefault(c[:j] + c[j + 1:], []).append(ci)
    return out


def _opposite(fan: Fan, ci: int, wall: tuple[int, ...]) -> int:
    return next(j for j in fan.cones[ci] if j not in wall)


def is_complete(fan: Fan) -> bool:
    """Every wall lies in exactly two maximal cones, on opposite sides of it."""
    n = fan.ambient_dim
    if any(len(c) != n for c in fan.cones):
        return False
    for wall, owners in walls(fan).items():
        if len(owners) != 2:
            return False
        u = integer_kernel([fan.rays[j] for j in wall])
        if len(u) != 1:
            return False
        a = dot(u[0], fan.rays[_opposite(fan, owners[0], wall)])
        b = dot(u[0], fan.rays[_opposite(fan, owners[1], wall)])
        if a * b >= 0:
            return False
    return True


def fan_predicates(fan: Fan, keep: Iterable[int] = ()) -> FanPredicates:
    n = fan.ambient_dim
    simplicial = all(len(c) == n and rank(fan.cone_rays(i)) == n for i, c in enumerate(fan.cones))
    mults = tuple(multiplicity(fan.cone_rays(i), fan.lattice) if simplicial else 0 for i in range(len(fan.cones)))
    bad = frozenset(i for i, m in enumerate(mults) if m != 1)
    return FanPredicates(is_complete(fan) if simplicial else False, simplicial, bad, mults)


def _separated(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    """Whether simplicial cones meet exactly in the face spanned by their common rays."""
    common = set(a) & set(b)
    only_a = [r for r in a if r not in common]
    only_b = [r for r in b if r not in common]
    if not only_a or not only_b:
        return not only_a and not only_b
    # cheap test: a facet normal of one cone separates the other
    for x, y in ((a, b), (b, a)):
        ca = Cone.from_generators(x)
        for u in ca.facet_normals:
            ok = True
            for r in y:
                d = dot(u, r)
                if d > 0 or (d == 0 and r not in common):
                    ok = False
                    break
            if ok:
                return True
    cons = [(r, ">", 0) for r in only_a] + [(r, "<", 0) for r in only_b] + [(r, ">=", 0) for r in common]
    cons += [(r, "<=", 0) for r in common]
    return strict_lp_certificate(cons) is not None


def face_property_violations(fan: Fan, only: Iterable[int] | None = None) -> list[tuple[int, int]]:
    """Pairs of maximal cones whose intersection is not a common face.

    With ``only`` the check is restricted to pairs involving those cones.
    """
    rays = [fan.cone_rays(i) for i in range(len(fan.cones))]
    focus = range(len(rays)) if only is None else sorted(set(only))
    bad = []
    seen = set()
    for i in focus:
        for j in range(len(rays)):
            if i == j or (min(i, j), max(i, j)) in seen:
                continue
            seen.add((min(i, j), max(i, j)))
            if not _separated(rays[i], rays[j]):
                bad.append((min(i, j), max(i, j)))
    return sorted(bad)


# ---------------------------------------------------------------------------
# subdivision


def barycentric(rays: Sequence[Vector], z: Sequence) -> Vector:
    return solve_left(rays, z)


def pick_subdivision_ray(c: Cone, lat: Lattice | None = None) -> Vector:
    """Hilbert basis element off the extreme rays with least barycentric sum (then lex)."""
    lat = Lattice.standard(c.ambient_dim) if lat is None else lat
    if not c.simplicial:
        raise FanError("pick_subdivision_ray needs a simplicial cone")
    gens = [lattice_primitive(lat, r) for r in c.rays]
    if multiplicity(gens, lat) == 1:
        raise NothingToSubdivide("nothing to subdivide: cone is unimodular")
    best = None
    for h in hilbert_basis(c, lat):
        if h in gens:
            continue
        key = (sum(barycentric(gens, h)), h)
        if best is None or key < best:
            best = key
    return best[1]


def stellar_subdivide(fan: Fan, z: Sequence) -> Fan:
    """Star subdivision at ``z``: cones containing ``z`` swap each ray with positive weight for ``z``."""
    z = vec(z)
    if primitive(z) != z:
        raise FanError(f"{z} is not primitive")
    sets, hit = [], False
    for i in range(len(fan.cones)):
        rays = fan.cone_rays(i)
        a = barycentric(rays, z)
        if a is None or any(x < 0 for x in a):
            sets.append(frozenset(rays))
            continue
        hit = True
        if z in rays:
            sets.append(frozenset(rays))
            continue
        for k, ak in enumerate(a):
            if ak > 0:
                sets.append(frozenset(rays[:k] + (z,) + rays[k + 1:]))
    if not hit:
        raise FanError(f"{z} lies outside the support of the fan")
    return _fan_from_ray_sets(fan.ambient_dim, sets, fan.distinguished_ray_sets())


@dataclass(frozen=True)
class SubdivisionStep:
    target: tuple[Vector, ...]
    ray: Vector
    result: tuple[tuple[Vector, ...], ...]
    target_multiplicity: int
    result_multiplicities: tuple[int, ...]


def resolve_except_distinguished(fan: Fan, cap: int = 10000, check_faces: bool = True
                                 ) -> tuple[Fan, list[SubdivisionStep]]:
    """Stellar subdivisions until every non-distinguished cone is unimodular."""
    dist = fan.distinguished_ray_sets()
    dist_cones = [Cone.from_generators(d, fan.ambient_dim) for d in dist]
    history: list[SubdivisionStep] = []
    mult_cache: dict[frozenset, int] = {}

    def mult(rays) -> int:
        key = frozenset(rays)
        if key not in mult_cache:
            mult_cache[key] = multiplicity(rays, fan.lattice)
        return mult_cache[key]

    while True:
        best = None
        for i in range(len(fan.cones)):
            rays = fan.cone_rays(i)
            if frozenset(rays) in dist:
                continue
            m = mult(rays)
            if m > 1 and (best is None or m > best[0]):
                best = (m, i)
        if best is None:
            return fan, history
        if len(history) >= cap:
            raise FanError(f"iteration cap {cap} exceeded")
        m, i = best
        target = fan.cone_rays(i)
        z = pick_subdivision_ray(Cone.from_generators(target, fan.ambient_dim), fan.lattice)
        for d in dist_cones:
            if d.contains(z):
                raise AdmissibilityViolation(f"ray {list(z)} would invade distinguished cone {list(d.rays)}")
        before = set(fan.ray_sets())
        fan = stellar_subdivide(fan, z)
        after = fan.ray_sets()
        pieces = sorted((tuple(sorted(s)) for s in after if s not in before and s - {z} <= set(target)))
        history.append(SubdivisionStep(target, z, tuple(pieces), m, tuple(mult(s) for s in pieces)))
        if check_faces:
            idx = [k for k, s in enumerate(after) if s not in before]
            bad = face_property_violations(fan, idx)
            if bad:
                raise FanError(f"face property broken after subdividing at {list(z)}: cones {bad[0]}")


# ---------------------------------------------------------------------------
# projectivity


@dataclass(frozen=True)
class SupportFunction:
    """Values on the rays and one linear functional per maximal cone."""

    values: tuple[Fraction | int, ...]
    functionals: tuple[Vector, ...]


def projectivity_certificate(fan: Fan) -> SupportFunction | None:
    """Strictly convex piecewise-linear function on a complete fan, or None."""
    if not is_complete(fan):
        raise IncompleteFanError("projectivity certificate needs a complete fan")
    nr = len(fan.rays)
    fixed = set(fan.cones[0])
    free = [j for j in range(nr) if j not in fixed]
    pos = {j: k for k, j in enumerate(free)}
    cons = []
    for wall, (a, b) in walls(fan).items():
        jb = _opposite(fan, b, wall)
        rays_a = fan.cone_rays(a)
        coeffs = barycentric(rays_a, fan.rays[jb])
        row = [Fraction(0)] * len(free)
        if jb in pos:
            row[pos[jb]] += 1
        for j, cj in zip(fan.cones[a], coeffs):
            if j in pos:
                row[pos[j]] -= cj
        cons.append((row, ">", 0))
    if not free:
        return None
    x = strict_lp_certificate(cons)
    if x is None:
        return None
    phi = [Fraction(0)] * nr
    for j, k in pos.items():
        phi[j] = Fraction(x[k])
    den = lcm(*(v.denominator for v in phi))
    phi = vec(v * den for v in phi)
    return SupportFunction(phi, _functionals(fan, phi))


def _functionals(fan: Fan, phi: Sequence) -> tuple[Vector, ...]:
    """Solve ``l . r = phi(r)`` on the rays of each cone."""
    out = []
    for i, c in enumerate(fan.cones):
        inv = inverse(fan.cone_rays(i))
        out.append(vec(sum(row[m] * phi[j] for m, j in enumerate(c)) for row in inv))
    return tuple(out)


def validate_support_function(fan: Fan, sf: SupportFunction) -> list[str]:
    """Exact re-validation: functionals reproduce the ray values and are strictly convex."""
    problems = []
    if len(sf.values) != len(fan.rays) or len(sf.functionals) != len(fan.cones):
        return ["support function does not match the fan"]
    if not is_complete(fan):
        return ["fan is not complete"]
    for i, l in enumerate(sf.functionals):
        for j in fan.cones[i]:
            if dot(l, fan.rays[j]) != sf.values[j]:
                problems.append(f"cone {i} disagrees with the value on ray {j}")
    for wall, (a, b) in walls(fan).items():
        jb = _opposite(fan, b, wall)
        ja = _opposite(fan, a, wall)
        if not dot(sf.functionals[a], fan.rays[jb]) < sf.values[jb]:
            problems.append(f"not strictly convex across wall {wall} at ray {jb}")
        if not dot(sf.functionals[b], fan.rays[ja]) < sf.values[ja]:
            problems.append(f"not strictly convex across wall {wall} at ray {ja}")
    return problems
