"""Basic configurations (M, N+, N-) and the shifted tower M_0, M_1, ...

Everything lives in ``Z^n = Ze ⊕ gp(M)``.  The shear ``alpha`` fixes ``e`` and
sends each dominating basis vector ``x_j`` to ``x_j - e``; the tower members
are ``M_i = alpha^i(M)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor, gcd, lcm
from typing import Sequence

from .exact import (
    Lattice,
    Matrix,
    Vector,
    add,
    dot,
    determinant,
    extend_to_basis,
    inverse,
    is_zero,
    lattice_member,
    lattice_primitive,
    lattice_quotient,
    mat_mul,
    mat_vec,
    primitive,
    rank,
    scale,
    solve_left,
    sub,
    vec,
)
from .monoid import AffineMonoid
from .polyhedra import Cone, cone_predicates, dual_cone, facets, intersect
from .report import CheckReport


class ConfigurationError(ValueError):
    pass


class OffsetSearchError(ConfigurationError):
    """No offset up to the cap satisfied both conditions."""

    def __init__(self, message: str, last_failure: str):
        super().__init__(message)
        self.last_failure = last_failure


@dataclass(frozen=True)
class DominatingBasis:
    """Lattice basis ``x_1..x_r`` of gp(M) whose cone contains ``R+ M``."""

    vectors: tuple[Vector, ...]
    e: Vector | None = None


@dataclass(frozen=True)
class ShiftedTower:
    base: AffineMonoid
    basis: DominatingBasis
    members: tuple[AffineMonoid, ...]
    alpha: Matrix

    @property
    def depth(self) -> int:
        return len(self.members) - 1


@dataclass(frozen=True)
class BasicConfiguration:
    M: AffineMonoid
    N_plus: AffineMonoid
    N_minus: AffineMonoid
    e: Vector
    tower: ShiftedTower
    offset: int | None = None
    flank_t: int | None = None
    sigma: Matrix | None = None

    @property
    def M1(self) -> AffineMonoid:
        return self.tower.members[1]

    @property
    def ambient_dim(self) -> int:
        return len(self.e)


# ---------------------------------------------------------------------------
# dominating bases


def find_dominating_basis(m: AffineMonoid, e: Sequence | None = None, strict: bool = False) -> DominatingBasis:
    """Lattice basis of gp(M) spanning a simplicial cone that contains ``R+ M``.

    Shears a basis of the dual lattice into the dual cone along a primitive
    interior vector, then dualizes.  With ``strict`` the sheared vectors land in
    the interior of the dual cone, so no ``x_j`` lies in ``R+ M`` (needs rank >= 2).
    """
    if not m.cone.pointed:
        raise ConfigurationError("monoid is not positive")
    gp = m.lattice
    if m.rank != gp.rank:
        raise ConfigurationError("monoid does not have full rank in its group")
    r = gp.rank
    if strict and r < 2:
        raise ConfigurationError("strict dominating basis needs rank >= 2")
    if not strict and m.flags.free:
        basis = DominatingBasis(tuple(m.hilbert_basis), None if e is None else vec(e))
        if is_dominating(m, basis):
            return basis
    gv = gp.vectors()
    rays = [primitive(gp.coordinates(x)) for x in m.cone.rays]
    local = Cone.from_generators(rays, r)
    w = primitive([sum(col) for col in zip(*local.facet_normals)])
    dual_basis = list(extend_to_basis(Lattice.standard(r), w))
    for j in range(1, r):
        y = dual_basis[j]
        need = max([Fraction(-dot(y, rho), dot(w, rho)) for rho in rays] + [Fraction(0)])
        k = floor(need) + 1 if strict else ceil(need)
        dual_basis[j] = add(y, scale(k, w))
    xs = inverse(dual_basis)  # columns are the dual basis, so rows of the transpose
    xs = tuple(zip(*xs))
    vectors = tuple(mat_vec(gv, x) for x in xs)
    basis = DominatingBasis(vectors, None if e is None else vec(e))
    if not is_dominating(m, basis) or (strict and any(m.cone.contains(x) for x in vectors)):
        raise ConfigurationError("dominating basis postcondition failed")
    return basis


def basis_coordinates(basis: DominatingBasis, v: Sequence) -> Vector | None:
    return solve_left(basis.vectors, v)


def is_dominating(m: AffineMonoid, basis: DominatingBasis) -> bool:
    if Lattice.from_generators(basis.vectors, m.ambient_dim) != m.lattice:
        return False
    for h in m.hilbert_basis:
        co = basis_coordinates(basis, h)
        if co is None or any(x < 0 for x in co):
            return False
    return True


# ---------------------------------------------------------------------------
# the tower


def shear_matrix(e: Sequence, xs: Sequence[Sequence], k: int = 1) -> Matrix:
    """Row-convention matrix of the automorphism ``e -> e, x_j -> x_j - k e``."""
    src = [tuple(e)] + [tuple(x) for x in xs]
    dst = [tuple(e)] + [sub(x, scale(k, e)) for x in xs]
    return _lattice_map(src, dst)


def _lattice_map(src, dst) -> Matrix:
    """Matrix sending the rows of ``src`` to those of ``dst``; must preserve their lattice."""
    n = len(src[0])
    if len(src) != n or rank(src) != n:
        raise ConfigurationError("e and the basis do not span the space")
    if Lattice.from_generators(src, n) != Lattice.from_generators(dst, n):
        raise ConfigurationError("map is not an automorphism of the lattice")
    return tuple(vec(r) for r in mat_mul(inverse(src), dst))


def shifted_monoid(m: AffineMonoid, basis: DominatingBasis, i: int) -> AffineMonoid:
    """``(R e + R+ M) ∩ (Z(x_1 - i e) + ... + Z(x_r - i e))``."""
    e = basis.e
    n = len(e)
    lat = Lattice.from_generators([sub(x, scale(i, e)) for x in basis.vectors], n)
    cylinder = Cone.from_generators(m.cone.rays, n, lineality=[e])
    plane = Cone.from_inequalities([], n, equations=_orthogonal_complement(lat))
    return AffineMonoid.normal(intersect(cylinder, plane), lat)


def _orthogonal_complement(lat: Lattice) -> list[Vector]:
    from .exact import integer_kernel

    return list(integer_kernel(lat.basis)) if lat.rank < lat.ambient_dim else []


def build_tower(m: AffineMonoid, basis: DominatingBasis, depth: int = 4) -> ShiftedTower:
    if basis.e is None:
        raise ConfigurationError("tower needs the unit e")
    n = len(basis.e)
    if Lattice.from_generators([basis.e, *basis.vectors], n) != Lattice.standard(n):
        raise ConfigurationError("Ze + gp(M) is not the whole lattice")
    members = tuple(m if i == 0 else shifted_monoid(m, basis, i) for i in range(depth + 1))
    return ShiftedTower(m, basis, members, shear_matrix(basis.e, basis.vectors))


def alpha_apply(tower: ShiftedTower, v: Sequence) -> Vector:
    return mat_vec(tower.alpha, v)


# ---------------------------------------------------------------------------
# flank monoids and the mirror construction


def build_flank(m_side: AffineMonoid, sign: int, t: int, e: Sequence) -> AffineMonoid:
    """Normal monoid on ``cone(±e, m_k ± t |m_k|_inf e)`` over ``Z^n``."""
    if t <= 0:
        raise ConfigurationError("flank parameter must be positive")
    if sign not in (1, -1):
        raise ConfigurationError("sign must be +1 or -1")
    e = vec(e)
    se = scale(sign, e)
    gens = [se] + [add(mk, scale(t * max(abs(x) for x in mk), se)) for mk in m_side.cone.rays]
    return AffineMonoid.normal(Cone.from_generators(gens, len(e)))


def split_off_edge(n_plus: AffineMonoid, e: Sequence) -> AffineMonoid:
    """M' with ``Ze + N+ = Ze + M'``, realized in the image of a section of ``gp -> gp/Ze``."""
    e = vec(e)
    if e not in n_plus.cone.rays or e not in n_plus.hilbert_basis:
        raise ConfigurationError(f"{e} is not an extreme Hilbert generator")
    q = lattice_quotient(n_plus.lattice, e)
    images = [q.project(h) for h in n_plus.hilbert_basis]
    qcone = Cone.from_generators([x for x in images if not is_zero(x)], q.lattice.ambient_dim)
    local = AffineMonoid.normal(qcone, q.lattice)
    m_prime = AffineMonoid.from_generators([q.section(h) for h in local.hilbert_basis], len(e))
    for g in n_plus.hilbert_basis:
        if localized_shift(m_prime, e, g) is None:
            raise ConfigurationError(f"splitting failed: {g} not in Ze + M'")
    for g in m_prime.hilbert_basis:
        if localized_shift(n_plus, e, g) is None:
            raise ConfigurationError(f"splitting failed: {g} not in Ze + N+")
    return m_prime


def sheared_monoid(m_prime: AffineMonoid, basis: DominatingBasis, e: Sequence, c: int) -> AffineMonoid:
    """``alpha^c(M')``: the copy of M' sheared ``c`` steps along ``-e``."""
    a = shear_matrix(e, basis.vectors, c)
    n = len(e)
    rays = [mat_vec(a, r) for r in m_prime.cone.rays]
    lat = Lattice.from_generators([mat_vec(a, v) for v in m_prime.lattice.vectors()], n)
    return AffineMonoid.normal(Cone.from_generators(rays, n), lat)


def offset_conditions(n_plus: AffineMonoid, m: AffineMonoid, e: Sequence) -> str | None:
    """None if ``R+N+ ⊂ R+e + R+M`` and ``R+N+ ∩ R+M = 0``, else the failing condition."""
    hull = Cone.from_generators(list(m.cone.rays) + [tuple(e)], len(e))
    bad = [r for r in n_plus.cone.rays if not hull.contains(r)]
    if bad:
        return f"R+N+ not inside R+e + R+M (ray {list(bad[0])})"
    meet = intersect(n_plus.cone, m.cone)
    if meet.rays:
        return f"R+N+ meets R+M along {list(meet.rays[0])}"
    return None


def choose_offset(n_plus: AffineMonoid, m_prime: AffineMonoid, basis: DominatingBasis, e: Sequence,
                  cap: int = 64) -> tuple[int, AffineMonoid, AffineMonoid]:
    """Smallest ``c >= 1`` for which the sheared copy M of M' satisfies both conditions."""
    if cap < 1:
        raise ConfigurationError("invalid cap")
    last = ""
    for c in range(1, cap + 1):
        m = sheared_monoid(m_prime, basis, e, c)
        failure = offset_conditions(n_plus, m, e)
        if failure is None:
            return c, m, sheared_monoid(m_prime, basis, e, c + 1)
        last = f"c={c}: {failure}"
    raise OffsetSearchError(f"no offset found up to cap {cap}", last)


def mirror_n_minus(n_plus: AffineMonoid, e: Sequence, basis: DominatingBasis, c: int) -> tuple[AffineMonoid, Matrix]:
    """``sigma: e -> -e, x_j - c e -> x_j - (c+1) e`` and ``N- = sigma(N+)``."""
    e = vec(e)
    n = len(e)
    src = [e] + [sub(x, scale(c, e)) for x in basis.vectors]
    if len(src) != n or Lattice.from_generators(src, n) != n_plus.lattice:
        raise ConfigurationError("Ze + sum Z(x_j - c e) is not the lattice of N+")
    dst = [scale(-1, e)] + [sub(x, scale(c + 1, e)) for x in basis.vectors]
    sigma = _lattice_map(src, dst)
    assert abs(determinant(sigma)) == 1
    n_minus = AffineMonoid.normal(Cone.from_generators([mat_vec(sigma, r) for r in n_plus.cone.rays], n),
                                  n_plus.lattice)
    return n_minus, sigma


def mirror_configuration(n_plus: AffineMonoid, e: Sequence, depth: int = 4, cap: int = 64) -> BasicConfiguration:
    """Admissible configuration built from a seed cone's dual monoid and its edge ``e``."""
    e = vec(e)
    m_prime = split_off_edge(n_plus, e)
    basis = find_dominating_basis(m_prime, e, strict=m_prime.rank >= 2)
    c, m, m1 = choose_offset(n_plus, m_prime, basis, e, cap)
    shifted = DominatingBasis(tuple(sub(x, scale(c, e)) for x in basis.vectors), e)
    tower = build_tower(m, shifted, depth)
    if tower.members[1].cone != m1.cone:
        raise ConfigurationError("tower member M_1 disagrees with the offset search")
    n_minus, sigma = mirror_n_minus(n_plus, e, basis, c)
    return BasicConfiguration(m, n_plus, n_minus, e, tower, offset=c, sigma=sigma)


def flank_configuration(m: AffineMonoid, e: Sequence, t: int = 1, depth: int = 4) -> BasicConfiguration:
    """The generic flank construction: ``N± = C± ∩ Z^n`` for the given parameter ``t``."""
    e = vec(e)
    basis = find_dominating_basis(m, e)
    tower = build_tower(m, basis, depth)
    n_plus = build_flank(m, 1, t, e)
    n_minus = build_flank(tower.members[1], -1, t, e)
    return BasicConfiguration(m, n_plus, n_minus, e, tower, flank_t=t)


# ---------------------------------------------------------------------------
# membership in Ze + N and friends


def localized_shift(n: AffineMonoid, e: Sequence, x: Sequence, lo: int | None = None,
                    hi: int | None = None) -> int | None:
    """Some integer ``k`` in ``[lo, hi]`` with ``x - k e`` in the normal monoid ``n``, else None.

    ``x ∈ Ze + n`` iff a ``k`` exists with no bounds; ``Z+ e + n`` takes ``lo=0``.
    """
    x, e = vec(x), vec(e)
    k_lo: Fraction | None = None if lo is None else Fraction(lo)
    k_hi: Fraction | None = None if hi is None else Fraction(hi)
    fixed: Fraction | None = None
    for w in n.cone.equations:
        we, wx = dot(w, e), dot(w, x)
        if we == 0:
            if wx != 0:
                return None
            continue
        k = Fraction(wx, 1) / we
        if fixed is not None and fixed != k:
            return None
        fixed = k
    for u in n.cone.facet_normals:
        ue, ux = dot(u, e), dot(u, x)
        # u.(x - k e) >= 0
        if ue == 0:
            if ux < 0:
                return None
        elif ue > 0:
            bound = Fraction(ux) / ue
            k_hi = bound if k_hi is None else min(k_hi, bound)
        else:
            bound = Fraction(ux) / ue
            k_lo = bound if k_lo is None else max(k_lo, bound)
    if fixed is not None:
        if fixed.denominator != 1:
            return None
        if (k_lo is not None and fixed < k_lo) or (k_hi is not None and fixed > k_hi):
            return None
        candidates = [int(fixed)]
    else:
        period = _shift_period(n.lattice, e)
        if k_lo is not None:
            start = ceil(k_lo)
        elif k_hi is not None:
            start = floor(k_hi) - period + 1
        else:
            start = 0
        candidates = range(start, start + period)
    for k in candidates:
        if k_hi is not None and k > k_hi:
            break
        if k_lo is not None and k < k_lo:
            continue
        y = sub(x, scale(k, e))
        if lattice_member(n.lattice, y):
            return k
    return None


def _shift_period(lat: Lattice, e: Sequence) -> int:
    co = lat.coordinates(e)
    if co is None:
        return 1
    return lcm(*(Fraction(x).denominator for x in co)) if co else 1


def _in_shift(n: AffineMonoid, e, x, sign: int | None) -> bool:
    if sign is None:
        return localized_shift(n, e, x) is not None
    if sign > 0:
        return localized_shift(n, e, x, lo=0) is not None
    return localized_shift(n, e, x, hi=0) is not None


def common_lattice_point(direction: Sequence, lats: Sequence[Lattice]) -> Vector:
    """Smallest positive multiple of ``direction`` lying in every lattice."""
    direction = primitive(direction)
    num, den = 1, 0
    for lat in lats:
        p = lattice_primitive(lat, direction)
        j = next(i for i, x in enumerate(direction) if x)
        f = Fraction(p[j]) / direction[j]
        num = lcm(num, f.numerator)
        den = f.denominator if den == 0 else gcd(den, f.denominator)
    return scale(Fraction(num, den or 1), direction)


# ---------------------------------------------------------------------------
# verification


def dual_common_facet(m: AffineMonoid, e: Sequence) -> Cone:
    """``(R e + R+ M)^op``."""
    return Cone.from_inequalities(m.cone.rays, len(e), equations=[e])


def window_points(cfg: BasicConfiguration, height: int):
    """Points ``k e + m`` of ``Z ⊕ M`` with ``|k| <= H`` and ``m`` of basis degree ``<= H``.

    Returns ``(point, k, degree)`` triples.
    """
    basis = cfg.tower.basis
    e = cfg.e
    r = len(basis.vectors)
    out = []
    for coords in product(range(height + 1), repeat=r):
        deg = sum(coords)
        if deg > height:
            continue
        m = vec(sum(c * x[j] for c, x in zip(coords, basis.vectors)) for j in range(len(e))) if r else tuple(0 for _ in e)
        if not cfg.M.contains(m):
            continue
        for k in range(-height, height + 1):
            out.append((add(m, scale(k, e)), k, deg))
    return out


def bar_m_index(cfg: BasicConfiguration, p: Sequence, limit: int) -> int | None:
    """Least ``i <= limit`` with ``p`` in ``Z+ e + M_i``, else None.

    Members beyond the materialized depth are reached through ``alpha^-i``,
    which fixes ``e`` and carries ``M_i`` onto ``M``.
    """
    tower, e = cfg.tower, cfg.e
    back = inverse(tower.alpha)
    q = vec(p)
    for i in range(limit + 1):
        if i <= tower.depth:
            if _in_shift(tower.members[i], e, p, 1):
                return i
        elif _in_shift(tower.members[0], e, q, 1):
            return i
        q = vec(mat_vec(back, q))
    return None


def verify_basic_configuration(cfg: BasicConfiguration, height: int = 6, admissible: bool = True) -> CheckReport:
    """Named checks in a fixed order; ``admissible`` adds the unimodular-facet condition."""
    rep = CheckReport()
    e = cfg.e
    n = len(e)
    M, Np, Nm, tower = cfg.M, cfg.N_plus, cfg.N_minus, cfg.tower
    M1 = tower.members[1] if tower.depth >= 1 else None
    neg_e = scale(-1, e)

    flags = M.flags
    rep.add("M_positive_normal", flags.positive and flags.normal, f"flags={flags}")
    rep.add("M_simplicial", flags.simplicial)

    ok = is_dominating(M, tower.basis) and Lattice.from_generators([e, *tower.basis.vectors], n) == Lattice.standard(n)
    rep.add("dominating_basis", ok, "" if ok else "basis is not a dominating lattice basis of gp(M) complementing Ze")

    fails = []
    if not Np.contains(e):
        fails.append("e not in N+")
    if not Nm.contains(neg_e):
        fails.append("-e not in N-")
    rep.add("condition_i", not fails, "; ".join(fails))

    meet = intersect(Nm.cone, M1.cone)
    if meet.rays:
        w = common_lattice_point(meet.rays[0], [Nm.lattice, M1.lattice])
        rep.add("condition_ii", False, f"witness {list(w)} in N- ∩ M1")
    else:
        rep.add("condition_ii", True)

    opposite = [u for u in Nm.cone.facet_normals if dot(u, neg_e) > 0]
    bad = []
    for u in opposite:
        if intersect(Nm.cone.face(u), M1.cone).rays:
            bad.append(list(u))
    rep.add("flank_facet", bool(opposite) and not bad,
            f"facets meeting R+M1: {bad}" if bad else ("" if opposite else "no facet avoids -e"))

    fails = []
    for name, N in (("N+", Np), ("N-", Nm)):
        for g in [e, neg_e, *N.hilbert_basis]:
            if not _in_shift(M, e, g, None):
                fails.append(f"{list(g)} of Ze+{name} not in Ze+M")
                break
        for g in M.hilbert_basis:
            if not _in_shift(N, e, g, None):
                fails.append(f"{list(g)} of Ze+M not in Ze+{name}")
                break
    rep.add("condition_iii", not fails, "; ".join(fails))

    fails = [f"{list(g)} not in Z+e+M" for g in Np.hilbert_basis if not _in_shift(M, e, g, 1)]
    fails += [f"{list(g)} not in Z-e+M1" for g in Nm.hilbert_basis if not _in_shift(M1, e, g, -1)]
    rep.add("flank_containment", not fails, "; ".join(fails[:3]))

    # Z ⊕ M = Ze + M_i, direct
    fails = []
    for i, Mi in enumerate(tower.members):
        if any(not _in_shift(Mi, e, g, None) for g in M.hilbert_basis):
            fails.append(f"M not in Ze+M_{i}")
        if any(not _in_shift(M, e, g, None) for g in Mi.hilbert_basis):
            fails.append(f"M_{i} not in Ze+M")
        if rank([e, *Mi.lattice.basis]) != Mi.lattice.rank + 1:
            fails.append(f"Ze ∩ gp(M_{i}) != 0")
        if Lattice.from_generators([e, *Mi.lattice.vectors()], n) != Lattice.standard(n):
            fails.append(f"Ze + gp(M_{i}) != Z^n")
    rep.add("tower_direct_sum", not fails, f"depth={tower.depth}" + ("; " + "; ".join(fails) if fails else ""))

    # increasing chain and the complement of the union
    fails = []
    for i in range(tower.depth):
        if any(not _in_shift(tower.members[i + 1], e, g, 1) for g in tower.members[i].hilbert_basis):
            fails.append(f"Z+e+M_{i} not in Z+e+M_{i + 1}")
    exceptional = {scale(-i, e) for i in range(1, height + 1)}
    uncovered, covered_bad, count, deepest = [], [], 0, 0
    for p, k, _ in window_points(cfg, height):
        count += 1
        idx = bar_m_index(cfg, p, tower.depth + abs(k))
        if p in exceptional:
            if idx is not None or _in_shift(M, e, p, 1):
                covered_bad.append(p)
        elif idx is None:
            uncovered.append(p)
        else:
            deepest = max(deepest, idx)
    if uncovered:
        fails.append(f"{len(uncovered)} window points outside the union, e.g. {list(uncovered[0])}")
    if covered_bad:
        fails.append(f"exceptional point {list(covered_bad[0])} covered")
    rep.add("tower_union", not fails,
            f"height={height}, {count} window points, max index {deepest}" + ("; " + "; ".join(fails) if fails else ""))

    # alpha maps each layer onto the next and commutes with inclusions
    fails = []
    for i in range(tower.depth):
        img = sorted(alpha_apply(tower, g) for g in tower.members[i].hilbert_basis)
        if img != sorted(tower.members[i + 1].hilbert_basis):
            fails.append(f"alpha(M_{i}) != M_{i + 1}")
    for i in range(max(0, tower.depth - 1)):
        for g in [e, *tower.members[i].hilbert_basis]:
            up = alpha_apply(tower, g)  # (1 + alpha_i)
            if not _in_shift(tower.members[i + 1], e, up, 1):
                fails.append(f"alpha_{i}({list(g)}) not in Z+e+M_{i + 1}")
            if not _in_shift(tower.members[i + 1], e, g, 1):
                fails.append(f"{list(g)} not in Z+e+M_{i + 1}")
            across = alpha_apply(tower, g)  # (1 + alpha_{i+1}) after inclusion
            if across != up or not _in_shift(tower.members[i + 2], e, across, 1):
                fails.append(f"square {i} fails at {list(g)}")
    rep.add("tower_alpha", not fails, "; ".join(fails[:3]))

    if admissible:
        rep.extend(admissibility_report(cfg))
    return rep


def admissibility_report(cfg: BasicConfiguration) -> CheckReport:
    rep = CheckReport()
    e, n = cfg.e, len(cfg.e)
    common = dual_common_facet(cfg.M, e)
    zn = Lattice.standard(n)
    fails = []
    if not cfg.M.flags.simplicial:
        fails.append("M not simplicial")
    for name, N in (("N+", cfg.N_plus), ("N-", cfg.N_minus)):
        d = dual_cone(N.cone)
        seen_common = False
        for u, f in facets(d):
            if f == common:
                seen_common = True
                continue
            if not cone_predicates(f, zn).unimodular:
                fails.append(f"facet {list(u)} of (R+{name})^op not unimodular")
        if not seen_common:
            fails.append(f"(Re+R+M)^op is not a facet of (R+{name})^op")
    rep.add("admissibility", not fails, "; ".join(fails))
    return rep


__all__ = [
    "BasicConfiguration", "ConfigurationError", "DominatingBasis", "OffsetSearchError", "ShiftedTower",
    "admissibility_report", "alpha_apply", "build_flank", "build_tower", "choose_offset",
    "dual_common_facet", "find_dominating_basis", "flank_configuration", "is_dominating",
    "localized_shift", "mirror_n_minus", "shear_matrix", "sheared_monoid", "shifted_monoid",
    "split_off_edge", "mirror_configuration", "verify_basic_configuration", "window_points",
]
