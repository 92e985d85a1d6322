"""Exact integer and rational linear algebra, lattices and normal forms.

Vectors are plain tuples whose entries are ``int`` or ``Fraction``; matrices
are tuples of row tuples.  Nothing in this package ever touches floating
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple


# ---------------------------------------------------------------------------
# vector helpers


def vec(values: Iterable) -> Vector:
    """Normalize an iterable of numbers into an exact vector.

    Integral fractions collapse to ``int`` so that equal vectors hash equally
    regardless of how they were produced.
    """
    out = []
    for x in values:
        if isinstance(x, float):
            raise TypeError("floating point values are not allowed")
        if isinstance(x, Fraction):
            out.append(x.numerator if x.denominator == 1 else x)
        elif isinstance(x, int):
            out.append(int(x))
        else:
            f = Fraction(x)
            out.append(f.numerator if f.denominator == 1 else f)
    return tuple(out)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> Vector:
    return vec(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return vec(a - b for a, b in zip(u, v))


def scale(k, v: Sequence) -> Vector:
    return vec(k * a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def zero(n: int) -> Vector:
    return (0,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def is_integral(v: Sequence) -> bool:
    return all(Fraction(a).denominator == 1 for a in v)


def content(v: Sequence) -> int:
    """gcd of the entries of an integer vector (0 for the zero vector)."""
    return reduce(gcd, (int(a) for a in v), 0)


def primitive(v: Sequence) -> Vector:
    """The primitive integer vector on the ray through ``v``."""
    if is_zero(v):
        raise ValueError("the zero vector has no primitive direction")
    den = reduce(lcm, (Fraction(a).denominator for a in v), 1)
    ints = [int(Fraction(a) * den) for a in v]
    g = content(ints)
    return tuple(a // g for a in ints)


def clear_denominators(v: Sequence) -> tuple[Vector, int]:
    den = reduce(lcm, (Fraction(a).denominator for a in v), 1)
    return tuple(int(Fraction(a) * den) for a in v), den


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    """Row vector ``v`` times matrix ``m``."""
    cols = len(m[0]) if m else 0
    return vec(sum(v[i] * m[i][j] for i in range(len(m))) for j in range(cols))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return tuple(mat_vec(b, row) for row in a)


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(col) for col in zip(*m)) if m else ()


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


# ---------------------------------------------------------------------------
# rational elimination


def row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q.  Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(row_echelon(rows)[1])


def solve_left(rows: Sequence[Sequence], v: Sequence):
    """Find ``x`` with ``x . rows = v`` over Q, or None if ``v`` is not in the row space.

    When the rows are dependent the returned solution is one particular solution.
    """
    k = len(rows)
    if k == 0:
        return () if is_zero(v) else None
    n = len(v)
    # Solve rows^T x = v: augmented system with n equations, k unknowns.
    aug = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    red, piv = row_echelon(aug)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for r, c in zip(red, piv):
        x[c] = r[k]
    return vec(x)


def determinant(m: Sequence[Sequence]):
    """Exact determinant (Bareiss for integer input, elimination otherwise)."""
    n = len(m)
    if n == 0:
        return 1
    if all(isinstance(x, int) for r in m for x in r):
        a = [list(r) for r in m]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if p is None:
                    return 0
                a[k], a[p] = a[p], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    a = [[Fraction(x) for x in r] for r in m]
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return vec([det])[0]


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [[Fraction(x) for x in m[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, piv = row_echelon(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(vec(r[n:]) for r in red)


# ---------------------------------------------------------------------------
# integer normal forms


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form with unimodular transform.

    Returns ``(h, u)`` with ``u . m = h``.  ``h`` has the same shape as ``m``;
    its nonzero rows come first in echelon form with positive pivots, entries
    above each pivot reduced into ``[0, pivot)``, and zero rows last.
    """
    rows = [[int(x) for x in r] for r in m]
    k = len(rows)
    ncols = len(rows[0]) if rows else 0
    u = [list(r) for r in identity(k)]

    def swap(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        u[i], u[j] = u[j], u[i]

    def axpy(dst, f, src):
        # row[dst] -= f * row[src]
        if f:
            rows[dst] = [a - f * b for a, b in zip(rows[dst], rows[src])]
            u[dst] = [a - f * b for a, b in zip(u[dst], u[src])]

    p = 0
    for c in range(ncols):
        if p == k:
            break
        while True:
            nz = [i for i in range(p, k) if rows[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: (abs(rows[i][c]), i))
            swap(p, best)
            done = True
            for i in range(p + 1, k):
                if rows[i][c]:
                    axpy(i, rows[i][c] // rows[p][c], p)
                    if rows[i][c]:
                        done = False
            if done:
                break
        if rows[p][c] == 0:
            continue
        if rows[p][c] < 0:
            rows[p] = [-a for a in rows[p]]
            u[p] = [-a for a in u[p]]
        for i in range(p):
            axpy(i, rows[i][c] // rows[p][c], p)
        p += 1
    return tuple(map(tuple, rows)), tuple(map(tuple, u))


def hnf_rows(m: Sequence[Sequence[int]]) -> Matrix:
    """Nonzero rows of the Hermite normal form."""
    h, _ = hermite_normal_form(m)
    return tuple(r for r in h if any(r))


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix."""
    a = [[int(x) for x in r] for r in m]
    if not a or not a[0]:
        return ()
    nr, nc = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(nr, nc):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        a[t], a[i0] = a[i0], a[t]
        for r in a:
            r[t], r[j0] = r[j0], r[t]
        while True:
            changed = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for r in a:
                        r[j] -= q * r[t]
                    if a[t][j]:
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        changed = True
            if changed:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return tuple(diag)


def integer_kernel(m: Sequence[Sequence]) -> Matrix:
    """A basis (HNF) of ``{y in Z^n : m . y = 0}`` for a rational matrix ``m`` (rows of length n)."""
    if not m:
        raise ValueError("need at least one row to fix the dimension")
    n = len(m[0])
    rows = [clear_denominators(r)[0] for r in m if not is_zero(r)]
    if not rows:
        return identity(n)
    # u . m^T = h ; rows of u that map to zero rows of h span the kernel.
    h, u = hermite_normal_form(transpose(rows))
    ker = [u[i] for i in range(n) if not any(h[i])]
    return hnf_rows(ker) if ker else ()


def saturation(rows: Sequence[Sequence[int]], n: int | None = None) -> Matrix:
    """HNF basis of ``span_Q(rows) ∩ Z^n``."""
    rows = [r for r in rows if not is_zero(r)]
    if not rows:
        return ()
    n = len(rows[0]) if n is None else n
    ker = integer_kernel(rows)
    if not ker:
        return identity(n)
    return integer_kernel(ker)


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """A discrete subgroup of Q^n, stored canonically.

    ``basis`` holds the nonzero rows of the Hermite normal form of the integer
    matrix ``denominator * generators``; the actual lattice vectors are
    ``row / denominator``.  Two lattices are equal iff these fields agree.
    """

    ambient_dim: int
    basis: Matrix
    denominator: int = 1

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence], ambient_dim: int | None = None) -> "Lattice":
        gens = [vec(g) for g in gens]
        if ambient_dim is None:
            if not gens:
                raise ValueError("ambient dimension required for the zero lattice")
            ambient_dim = len(gens[0])
        den = reduce(lcm, (Fraction(x).denominator for g in gens for x in g), 1)
        ints = [[int(Fraction(x) * den) for x in g] for g in gens]
        h = hnf_rows(ints) if ints else ()
        g = reduce(gcd, (x for r in h for x in r), den)
        h = tuple(tuple(x // g for x in r) for r in h)
        return cls(ambient_dim, h, den // g)

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(n, identity(n), 1)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    def vectors(self) -> tuple[Vector, ...]:
        """Basis vectors as exact rational vectors."""
        d = self.denominator
        return tuple(vec(Fraction(x, d) for x in r) for r in self.basis)

    def coordinates(self, v: Sequence):
        """Coordinates of ``v`` in the canonical basis (rational), or None if outside the span."""
        return solve_left(self.vectors(), v)

    def covolume(self):
        """|det| of the basis for full-rank lattices."""
        return abs(determinant(self.vectors()))

    def __contains__(self, v) -> bool:
        return lattice_member(self, v)


def lattice_member(lat: Lattice, v: Sequence) -> bool:
    """True iff ``v`` is an integer combination of the lattice basis."""
    if len(v) != lat.ambient_dim:
        raise ValueError("dimension mismatch")
    w = [Fraction(x) * lat.denominator for x in v]
    if any(x.denominator != 1 for x in w):
        return False
    w = [int(x) for x in w]
    for row in lat.basis:
        c = next(j for j, x in enumerate(row) if x)
        if w[c] % row[c]:
            return False
        q = w[c] // row[c]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return not any(w)


def dual_lattice(lat: Lattice) -> Lattice:
    """``{u : <u, v> in Z for all v in lat}`` for a full-rank lattice."""
    if not lat.full_rank:
        raise ValueError("dual lattice requires a full-rank lattice")
    inv = inverse(lat.vectors())
    return Lattice.from_generators(transpose(inv))


def lattice_primitive(lat: Lattice, v: Sequence) -> Vector:
    """The primitive element of ``lat`` on the ray through ``v``."""
    coords = lat.coordinates(v)
    if coords is None or is_zero(v):
        raise ValueError(f"{v} does not span a ray of the lattice")
    return mat_vec(lat.vectors(), primitive(coords))


def is_primitive_in(lat: Lattice, v: Sequence) -> bool:
    coords = lat.coordinates(v)
    if coords is None or not is_integral(coords) or is_zero(coords):
        return False
    return content(coords) == 1


def extend_to_basis(lat: Lattice, v: Sequence) -> tuple[Vector, ...]:
    """A basis of ``lat`` whose first member is ``v``."""
    coords = lat.coordinates(v)
    if coords is None or not is_integral(coords):
        raise ValueError(f"{v} is not a member of the lattice")
    if is_zero(coords) or content(coords) != 1:
        raise ValueError(f"{v} is not primitive in the lattice")
    a = [int(x) for x in coords]
    # u . a^T = (1, 0, ..., 0)^T, so a is the first column of u^{-1}.
    _, u = hermite_normal_form([[x] for x in a])
    uinv = inverse(u)
    change = transpose(uinv)
    assert change[0] == tuple(a)
    return tuple(mat_vec(lat.vectors(), row) for row in change)


@dataclass(frozen=True)
class LinearMap:
    """``x -> x . matrix`` (row-vector convention)."""

    matrix: Matrix

    def __call__(self, v: Sequence) -> Vector:
        return mat_vec(self.matrix, v)


@dataclass(frozen=True)
class Quotient:
    lattice: Lattice
    project: LinearMap
    section: LinearMap
    basis: tuple[Vector, ...]


def lattice_quotient(lat: Lattice, v: Sequence) -> Quotient:
    """Quotient of ``lat`` by ``Zv`` identified with ``Z^(rank-1)``, with a splitting."""
    basis = extend_to_basis(lat, v)
    k = len(basis)
    n = lat.ambient_dim
    # left inverse of the basis matrix: coordinates = x . B^T (B B^T)^{-1}
    gram = tuple(tuple(dot(a, b) for b in basis) for a in basis)
    coord_map = mat_mul(transpose(basis), inverse(gram))
    project = LinearMap(tuple(tuple(row[1:]) for row in coord_map))
    section = LinearMap(tuple(basis[1:]))
    assert len(project.matrix) == n
    return Quotient(Lattice.standard(k - 1), project, section, basis)
