"""Rational polyhedral cones and polytopes.

A :class:`Cone` keeps both representations: its extreme rays (primitive
integer directions, sorted) and its facet normals, plus the linear equations
cutting out its span.  Conversions use the double description method, with a
direct inverse-matrix shortcut for simplicial cones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .exact import (
    Lattice,
    Vector,
    dot,
    inverse,
    integer_kernel,
    is_zero,
    lattice_primitive,
    mat_vec,
    primitive,
    rank,
    saturation,
    smith_normal_form,
    sub,
    transpose,
    unit,
    vec,
)
from .lp import strict_lp_certificate


class EmptyPolytopeError(ValueError):
    pass


class UnboundedPolytopeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# double description


def double_description(inequalities: Sequence[Sequence], dim: int) -> tuple[list[Vector], list[Vector]]:
    """Generators of ``{x : a . x >= 0 for all a}``.

    Returns ``(rays, lineality)`` as primitive integer vectors; the rays are the
    extreme rays modulo the lineality space.
    """
    lin: list[Vector] = [unit(dim, i) for i in range(dim)]
    rays: list[tuple[Vector, frozenset]] = []
    for idx, a in enumerate(inequalities):
        if is_zero(a):
            continue
        vals = [dot(a, l) for l in lin]
        k = next((i for i, x in enumerate(vals) if x != 0), None)
        if k is not None:
            l0 = lin[k] if vals[k] > 0 else tuple(-x for x in lin[k])
            a0 = abs(vals[k])
            new_lin = []
            for i, l in enumerate(lin):
                if i == k:
                    continue
                al = vals[i]
                new_lin.append(primitive(sub(l, [Fraction(al, a0) * x for x in l0])) if al else l)
            new_rays = []
            for r, z in rays:
                ar = dot(a, r)
                if ar:
                    r = primitive(sub(r, [Fraction(ar, a0) * x for x in l0]))
                new_rays.append((r, z | {idx}))
            tight = frozenset(range(idx))
            new_rays.append((l0, tight))
            lin, rays = new_lin, new_rays
            continue
        pos, neg, zer = [], [], []
        for r, z in rays:
            ar = dot(a, r)
            (pos if ar > 0 else neg if ar < 0 else zer).append((r, z, ar))
        new_rays = [(r, z) for r, z, _ in pos] + [(r, z | {idx}) for r, z, _ in zer]
        need = dim - len(lin) - 2
        for p, zp, ap in pos:
            for q, zq, aq in neg:
                common = zp & zq
                if len(common) < need:
                    continue
                if any(common <= z for r, z in rays if r is not p and r is not q):
                    continue
                new = primitive([ap * y - aq * x for x, y in zip(p, q)])
                new_rays.append((new, common | {idx}))
        rays = new_rays
    seen = {}
    for r, _ in rays:
        seen.setdefault(r, None)
    return list(seen), lin


def _project_into_span(u: Sequence, span_basis: Sequence[Sequence]) -> Vector:
    """Orthogonal projection of ``u`` onto ``span(span_basis)``."""
    if not span_basis:
        return tuple(0 for _ in u)
    gram = tuple(tuple(dot(a, b) for b in span_basis) for a in span_basis)
    rhs = tuple(dot(u, a) for a in span_basis)
    coeffs = mat_vec(transpose(inverse(gram)), rhs)
    out = [Fraction(0)] * len(u)
    for c, b in zip(coeffs, span_basis):
        for j, x in enumerate(b):
            out[j] += c * x
    return vec(out)


def _independent_subset(vectors: Sequence[Sequence]) -> list[Vector]:
    basis: list[Vector] = []
    for v in vectors:
        if rank(basis + [v]) > len(basis):
            basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone ``{x : <u, x> >= 0, <w, x> = 0}``.

    ``rays`` are the extreme rays and ``lineality`` a basis of the lineality
    space (empty for pointed cones).  ``facet_normals`` are taken inside the
    linear span of the cone so that they are canonical even for
    lower-dimensional cones.
    """

    ambient_dim: int
    rays: tuple[Vector, ...]
    facet_normals: tuple[Vector, ...]
    equations: tuple[Vector, ...] = ()
    lineality: tuple[Vector, ...] = ()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence], ambient_dim: int | None = None,
                        lineality: Iterable[Sequence] = ()) -> "Cone":
        gens = [vec(g) for g in gens]
        lineality = [vec(g) for g in lineality]
        if ambient_dim is None:
            if not gens and not lineality:
                raise ValueError("ambient dimension required for the zero cone")
            ambient_dim = len((gens or lineality)[0])
        n = ambient_dim
        prim = sorted({primitive(g) for g in gens if not is_zero(g)})
        lin = [primitive(l) for l in lineality if not is_zero(l)]
        if not prim and not lin:
            return cls(n, (), (), tuple(unit(n, i) for i in range(n)), ())
        span = prim + lin
        eqs = integer_kernel(span) if rank(span) < n else ()
        if not lin and rank(prim) == len(prim):
            return cls(n, tuple(prim), _simplicial_normals(prim), tuple(eqs), ())
        # H-representation from the dual description, then the primal rays
        # back from it (this also discards non-extreme generators).
        duals, _ = double_description(prim + lin + [tuple(-x for x in l) for l in lin], n)
        basis = _independent_subset(span)
        normals = set()
        for u in duals:
            w = _project_into_span(u, basis)
            if not is_zero(w):
                normals.add(primitive(w))
        return cls._from_h(n, sorted(normals), eqs)

    @classmethod
    def from_inequalities(cls, normals: Iterable[Sequence], ambient_dim: int,
                          equations: Iterable[Sequence] = ()) -> "Cone":
        normals = [vec(u) for u in normals]
        eqs = [vec(w) for w in equations]
        ineqs = normals + eqs + [tuple(-x for x in w) for w in eqs]
        ineqs = sorted({primitive(a) for a in ineqs if not is_zero(a)})
        rays, lin = double_description(ineqs, ambient_dim)
        return cls.from_generators(rays, ambient_dim, lineality=lin)

    @classmethod
    def _from_h(cls, n, normals, eqs) -> "Cone":
        ineqs = list(normals) + list(eqs) + [tuple(-x for x in w) for w in eqs]
        rays, lin = double_description(ineqs, n)
        lin_basis = ()
        if lin:
            lin_basis = tuple(saturation(lin, n))
        # keep only irredundant facet normals: those tight on a codim-1 face
        span_dim = rank(list(rays) + list(lin))
        keep = []
        for u in normals:
            tight = [r for r in rays if dot(u, r) == 0] + list(lin)
            if rank(tight) == span_dim - 1:
                keep.append(u)
        return cls(n, tuple(sorted(rays)), tuple(sorted(set(keep))), tuple(eqs), lin_basis)

    # -- queries ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return rank(list(self.rays) + list(self.lineality))

    @property
    def pointed(self) -> bool:
        return not self.lineality

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def simplicial(self) -> bool:
        return self.pointed and len(self.rays) == self.dim

    def contains(self, x: Sequence) -> bool:
        return (all(dot(u, x) >= 0 for u in self.facet_normals)
                and all(dot(w, x) == 0 for w in self.equations))

    def relative_interior_contains(self, x: Sequence) -> bool:
        return (all(dot(u, x) > 0 for u in self.facet_normals)
                and all(dot(w, x) == 0 for w in self.equations))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def face(self, normal: Sequence) -> "Cone":
        """The face cut out by a supporting hyperplane ``normal``."""
        return Cone.from_generators([r for r in self.rays if dot(normal, r) == 0], self.ambient_dim,
                                    lineality=self.lineality)

    def __repr__(self) -> str:
        return f"Cone(rays={list(self.rays)})"


def _simplicial_normals(gens: Sequence[Vector]) -> tuple[Vector, ...]:
    """Inward facet normals of a simplicial cone, taken inside its span."""
    k = len(gens)
    gram = tuple(tuple(dot(a, b) for b in gens) for a in gens)
    ginv = inverse(gram)
    normals = []
    for i in range(k):
        # u = sum_j ginv[i][j] g_j satisfies <u, g_l> = delta_il
        u = [Fraction(0)] * len(gens[0])
        for j in range(k):
            c = ginv[i][j]
            if c:
                for t, x in enumerate(gens[j]):
                    u[t] += c * x
        normals.append(primitive(u))
    return tuple(sorted(normals))


def cone(*gens: Sequence) -> Cone:
    """Shorthand: the cone generated by the given vectors."""
    return Cone.from_generators(gens)


def dual_cone(c: Cone, pairing_lattice: Lattice | None = None) -> Cone:
    """``{u : <u, x> >= 0 for all x in c}`` for a full-dimensional pointed cone.

    Rays of the result are primitive integer directions; use
    :func:`ray_generators` for the primitive generators in a given lattice.
    """
    if not c.pointed or not c.full_dimensional:
        raise ValueError("dual_cone needs a full-dimensional pointed cone")
    if pairing_lattice is not None and pairing_lattice.ambient_dim != c.ambient_dim:
        raise ValueError("dimension mismatch")
    return Cone.from_generators(c.facet_normals, c.ambient_dim)


def ray_generators(c: Cone, lat: Lattice) -> tuple[Vector, ...]:
    """Primitive generators of the extreme rays in ``lat``."""
    return tuple(lattice_primitive(lat, r) for r in c.rays)


def facets(c: Cone) -> list[tuple[Vector, Cone]]:
    if not c.full_dimensional:
        raise ValueError("facets() expects a full-dimensional cone")
    return [(u, c.face(u)) for u in c.facet_normals]


def intersect(a: Cone, b: Cone) -> Cone:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("dimension mismatch")
    eqs = list(a.equations) + list(b.equations)
    return Cone.from_inequalities(list(a.facet_normals) + list(b.facet_normals), a.ambient_dim, eqs)


@dataclass(frozen=True)
class ConePredicates:
    pointed: bool
    simplicial: bool
    unimodular: bool
    multiplicity: int | None


def multiplicity(gens: Sequence[Sequence], lat: Lattice | None = None) -> int:
    """Index of the sublattice spanned by primitive generators in its saturation in ``lat``."""
    if lat is not None and not (lat.full_rank and lat.denominator == 1 and lat.covolume() == 1):
        rows = []
        for g in gens:
            coords = lat.coordinates(g)
            if coords is None:
                raise ValueError(f"{g} is outside the lattice span")
            rows.append(primitive(coords))
    else:
        rows = [primitive(g) for g in gens]
    d = 1
    for x in smith_normal_form(rows):
        d *= x
    return d


def cone_predicates(c: Cone, lat: Lattice | None = None) -> ConePredicates:
    simp = c.simplicial
    mult = multiplicity(c.rays, lat) if simp else None
    return ConePredicates(c.pointed, simp, simp and mult == 1, mult)


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True)
class Polytope:
    """``{x : <normal, x> >= offset}`` for each halfspace, with its vertices."""

    halfspaces: tuple[tuple[Vector, object], ...]
    vertices: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) >= b for a, b in self.halfspaces)


def polytope_vertices(halfspaces: Iterable[tuple[Sequence, object]]) -> Polytope:
    """Vertices of a bounded, full-dimensional halfspace intersection."""
    hs = tuple((vec(a), vec([b])[0]) for a, b in halfspaces)
    if not hs:
        raise UnboundedPolytopeError("no halfspaces")
    n = len(hs[0][0])
    if strict_lp_certificate([(a, ">=", b) for a, b in hs]) is None:
        raise EmptyPolytopeError("halfspace system is infeasible")
    rec, lin = double_description([a for a, _ in hs], n)
    if rec or lin:
        raise UnboundedPolytopeError("halfspace system is unbounded")
    verts = set()
    for idx in combinations(range(len(hs)), n):
        rows = [hs[i][0] for i in idx]
        if rank(rows) < n:
            continue
        x = _solve_square(rows, [hs[i][1] for i in idx])
        if all(dot(a, x) >= b for a, b in hs):
            verts.add(x)
    return Polytope(hs, tuple(sorted(verts)))


def _solve_square(rows, rhs) -> Vector:
    """Solve ``rows . x = rhs`` (rows are the equations)."""
    return mat_vec(transpose(inverse(rows)), rhs)


def corner_cone(p: Polytope, v: Sequence) -> Cone:
    """Tangent cone of ``p`` at vertex ``v``, translated to the origin."""
    v = vec(v)
    if v not in p.vertices:
        raise ValueError(f"{v} is not a vertex")
    return Cone.from_generators([sub(w, v) for w in p.vertices if w != v], len(v))


def homogenization(p: Polytope) -> Cone:
    """The cone over ``p x {1}`` in one dimension more."""
    return Cone.from_generators([tuple(v) + (1,) for v in p.vertices])


__all__ = [
    "Cone", "ConePredicates", "EmptyPolytopeError", "Polytope", "UnboundedPolytopeError",
    "cone", "cone_predicates", "corner_cone", "double_description", "dual_cone", "facets",
    "homogenization", "intersect", "multiplicity", "polytope_vertices", "ray_generators",
    "strict_lp_certificate",
]
