"""Affine monoids as (lattice, cone) pairs and their Hilbert bases."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor
from typing import Iterable, Sequence

from .exact import (
    Lattice,
    Vector,
    determinant,
    dot,
    integer_kernel,
    inverse,
    is_zero,
    lattice_member,
    mat_vec,
    primitive,
    rank,
    saturation,
    solve_left,
    sub,
    vec,
)
from .polyhedra import Cone


# ---------------------------------------------------------------------------
# Hilbert bases


def _frac(x: Fraction) -> Fraction:
    return x - floor(x)


def parallelepiped_points(rays: Sequence[Sequence[int]]) -> list[tuple[Vector, Vector]]:
    """Lattice points of the half-open parallelepiped spanned by linearly independent ``rays``.

    ``rays`` are rows of a square integer matrix ``W``; returns pairs
    ``(point, barycentric coordinates)`` for all of ``Z^d`` ∩ ``[0,1)^d W``.
    """
    d = len(rays)
    winv = inverse(rays)
    steps = [tuple(Fraction(x) for x in row) for row in winv]
    start = tuple(Fraction(0) for _ in range(d))
    seen = {start}
    queue = deque([start])
    while queue:
        lam = queue.popleft()
        for s in steps:
            nxt = tuple(_frac(a + b) for a, b in zip(lam, s))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    assert len(seen) == abs(determinant(rays))
    return sorted((mat_vec(rays, lam), vec(lam)) for lam in seen)


def placing_triangulation(rays: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Placing triangulation of a full-dimensional pointed cone, in the given ray order.

    Returns simplices as sorted tuples of ray indices.
    """
    d = len(rays[0])
    first: list[int] = []
    for i, r in enumerate(rays):
        if rank([rays[j] for j in first] + [r]) > len(first):
            first.append(i)
        if len(first) == d:
            break
    if len(first) < d:
        raise ValueError("rays do not span the space")
    simplices = [tuple(first)]
    for i, p in enumerate(rays):
        if i in first:
            continue
        count: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for s in simplices:
            for j in range(len(s)):
                f = s[:j] + s[j + 1:]
                count.setdefault(f, []).append(s)
        new = []
        for f, owners in count.items():
            if len(owners) != 1:
                continue
            s = owners[0]
            apex = next(k for k in s if k not in f)
            u = _facet_normal([rays[k] for k in f], rays[apex])
            if dot(u, p) < 0:
                new.append(tuple(sorted(f + (i,))))
        simplices.extend(new)
    return sorted(simplices)


def _facet_normal(facet_rays, apex) -> Vector:
    """Normal of the hyperplane through ``facet_rays``, positive on ``apex``."""
    ker = integer_kernel(facet_rays)
    assert len(ker) == 1
    u = ker[0]
    return u if dot(u, apex) > 0 else tuple(-x for x in u)


def _reduce_simplicial(cands: list[tuple[Vector, Vector]]) -> list[Vector]:
    cands = sorted(cands, key=lambda t: (sum(t[1]), t[0]))
    keep = []
    for i, (x, lx) in enumerate(cands):
        sx = sum(lx)
        reducible = False
        for y, ly in cands[:i]:
            if sum(ly) >= sx:
                break
            if all(a >= b for a, b in zip(lx, ly)):
                reducible = True
                break
        if not reducible:
            keep.append(x)
    return keep


def _reduce_general(cands: list[Vector], c: Cone) -> list[Vector]:
    grading = tuple(sum(col) for col in zip(*c.facet_normals))
    cands = sorted(set(cands), key=lambda x: (dot(grading, x), x))
    keep = []
    for i, x in enumerate(cands):
        gx = dot(grading, x)
        reducible = False
        for y in cands[:i]:
            if dot(grading, y) >= gx:
                break
            if c.contains(sub(x, y)):
                reducible = True
                break
        if not reducible:
            keep.append(x)
    return keep


def _local_coordinates(c: Cone, lat: Lattice):
    """Basis of ``lat ∩ span(c)`` and the rays of ``c`` as primitive coordinate rows."""
    lv = lat.vectors()
    rows = []
    for r in c.rays:
        co = lat.coordinates(r)
        if co is None:
            raise ValueError(f"ray {r} is outside the span of the lattice")
        rows.append(primitive(co))
    sat = saturation(rows, lat.rank)
    local_basis = [mat_vec(lv, s) for s in sat]
    w = [primitive(solve_left(sat, r)) for r in rows]
    return local_basis, w


def hilbert_basis(c: Cone, lat: Lattice | None = None) -> list[Vector]:
    """Minimal generating set of the monoid ``c ∩ lat`` (sorted)."""
    if not c.pointed:
        raise ValueError("Hilbert basis requires a pointed cone")
    if not c.rays:
        return []
    lat = Lattice.standard(c.ambient_dim) if lat is None else lat
    local_basis, w = _local_coordinates(c, lat)
    d = len(local_basis)
    if len(w) == d:
        cands = [(p, lam) for p, lam in parallelepiped_points(w) if not is_zero(p)]
        cands += [(tuple(r), tuple(int(i == j) for j in range(d))) for i, r in enumerate(w)]
        local = _reduce_simplicial(cands)
    else:
        w = sorted(w)
        cands = set(map(tuple, w))
        for simplex in placing_triangulation(w):
            for p, _ in parallelepiped_points([w[k] for k in simplex]):
                if not is_zero(p):
                    cands.add(p)
        local = _reduce_general(list(cands), Cone.from_generators(w, d))
    return sorted(mat_vec(local_basis, x) for x in local)


# ---------------------------------------------------------------------------
# monoids


@dataclass(frozen=True)
class MonoidFlags:
    positive: bool
    normal: bool
    simplicial: bool
    free: bool


@dataclass(frozen=True)
class AffineMonoid:
    """A finitely generated monoid, recorded by its cone, a lattice and generators.

    For monoids built with :meth:`normal` the generators are the Hilbert basis
    of ``cone ∩ lattice``; for :meth:`from_generators` they are the given ones
    and ``lattice`` is the group of differences.
    """

    lattice: Lattice
    cone: Cone
    generators: tuple[Vector, ...] = field(compare=False)

    @classmethod
    def normal(cls, c: Cone, lat: Lattice | None = None) -> "AffineMonoid":
        lat = Lattice.standard(c.ambient_dim) if lat is None else lat
        hb = tuple(hilbert_basis(c, lat))
        gp = Lattice.from_generators(hb, c.ambient_dim) if hb else Lattice(c.ambient_dim, ())
        return cls(gp, c, hb)

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence], ambient_dim: int | None = None) -> "AffineMonoid":
        gens = tuple(sorted({vec(g) for g in gens if not is_zero(g)}))
        n = ambient_dim if ambient_dim is not None else len(gens[0])
        return cls(Lattice.from_generators(gens, n), Cone.from_generators(gens, n), gens)

    @property
    def ambient_dim(self) -> int:
        return self.cone.ambient_dim

    @property
    def rank(self) -> int:
        return self.cone.dim

    @cached_property
    def hilbert_basis(self) -> tuple[Vector, ...]:
        return tuple(hilbert_basis(self.cone, self.lattice))

    @cached_property
    def flags(self) -> MonoidFlags:
        return classify(self)

    def contains(self, v: Sequence) -> bool:
        v = vec(v)
        if not (lattice_member(self.lattice, v) and self.cone.contains(v)):
            return False
        if self.flags.normal:
            return True
        return _reachable(v, self.generators, self.cone)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def grading(self) -> Vector:
        """A linear form positive on every nonzero element."""
        return tuple(sum(col) for col in zip(*self.cone.facet_normals))


def _reachable(x: Vector, gens: Sequence[Vector], c: Cone) -> bool:
    memo: dict[Vector, bool] = {}

    def go(v: Vector) -> bool:
        if is_zero(v):
            return True
        if v in memo:
            return memo[v]
        ok = False
        for g in gens:
            y = sub(v, g)
            if c.contains(y) and go(y):
                ok = True
                break
        memo[v] = ok
        return ok

    return go(x)


def group_of_differences(m: AffineMonoid) -> Lattice:
    return Lattice.from_generators(m.generators, m.ambient_dim) if m.generators else Lattice(m.ambient_dim, ())


def classify(m: AffineMonoid) -> MonoidFlags:
    positive = m.cone.pointed
    simplicial = m.cone.simplicial
    if not positive:
        return MonoidFlags(False, False, simplicial, False)
    gp = group_of_differences(m)
    hb = hilbert_basis(m.cone, gp)
    normal = all(h in m.generators or _reachable(h, m.generators, m.cone) for h in hb)
    free = normal and len(hb) == m.rank and Lattice.from_generators(hb, m.ambient_dim) == gp
    return MonoidFlags(positive, normal, simplicial, free)


def same_monoid(a: AffineMonoid, b: AffineMonoid) -> bool:
    """Equality as sets: canonical (gp, cone) for normal monoids, mutual generators otherwise."""
    if a.flags.normal and b.flags.normal:
        return group_of_differences(a) == group_of_differences(b) and a.cone == b.cone
    return all(g in b for g in a.generators) and all(g in a for g in b.generators)
