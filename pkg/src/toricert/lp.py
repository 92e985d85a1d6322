"""Exact two-phase simplex with Bland's rule, and strict-feasibility certificates."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import Vector, vec

RELATIONS = (">=", ">", "<=", "<")


class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status: str, x=None, value=None):
        self.status = status  # "optimal", "infeasible" or "unbounded"
        self.x = x
        self.value = value

    def __repr__(self):
        return f"LPResult({self.status!r}, x={self.x}, value={self.value})"


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    prow = tab[r]
    pv = prow[c]
    if pv != 1:
        inv = 1 / pv
        prow = [x * inv if x else x for x in prow]
        tab[r] = prow
    nz = [j for j, x in enumerate(prow) if x]
    for i, row in enumerate(tab):
        if i != r:
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
    basis[r] = c


def _run(tab: list[list[Fraction]], basis: list[int], ncols: int, allowed) -> str:
    """Maximize the objective stored in the last row (as reduced costs, ``z - c``).

    Bland's rule: entering column is the lowest index with negative reduced
    cost; leaving row is the minimum ratio, ties broken by lowest basic index.
    """
    obj = tab[-1]
    while True:
        obj = tab[-1]
        c = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if c is None:
            return "optimal"
        best = None
        for i in range(len(tab) - 1):
            a = tab[i][c]
            if a > 0:
                ratio = tab[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(tab, basis, best[1], c)


def maximize(objective: Sequence, constraints: Sequence[tuple[Sequence, object]], free: bool = True) -> LPResult:
    """Maximize ``objective . x`` subject to ``a . x >= b`` for each ``(a, b)``.

    Variables are free unless ``free`` is False (then ``x >= 0``).
    """
    d = len(objective)
    m = len(constraints)
    nx = 2 * d if free else d
    # columns: x (split when free) | surplus (m) | artificial (m) | rhs
    ncols = nx + 2 * m
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (a, b) in enumerate(constraints):
        row = [Fraction(0)] * (ncols + 1)
        for j in range(d):
            row[j] = Fraction(a[j])
            if free:
                row[d + j] = -Fraction(a[j])
        row[nx + i] = Fraction(-1)
        row[-1] = Fraction(b)
        if row[-1] < 0:
            row = [-x for x in row]
        row[nx + m + i] = Fraction(1)
        tab.append(row)
        basis.append(nx + m + i)

    # phase 1: maximize -(sum of artificials)
    obj = [Fraction(0)] * (ncols + 1)
    for row in tab:
        for j in range(nx + m):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    tab.append(obj)
    allowed = [True] * ncols
    _run(tab, basis, ncols, allowed)
    if tab[-1][-1] != 0:
        return LPResult("infeasible")
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= nx + m:
            c = next((j for j in range(nx + m) if tab[i][j] != 0), None)
            if c is not None:
                _pivot(tab, basis, i, c)
    for j in range(nx + m, ncols):
        allowed[j] = False

    # phase 2
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(d):
        obj[j] = -Fraction(objective[j])
        if free:
            obj[d + j] = Fraction(objective[j])
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [x - f * y for x, y in zip(obj, tab[i])]
    tab[-1] = obj
    status = _run(tab, basis, ncols, allowed)
    if status == "unbounded":
        return LPResult("unbounded")
    vals = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        vals[b] = tab[i][-1]
    x = [vals[j] - (vals[d + j] if free else 0) for j in range(d)]
    return LPResult("optimal", vec(x), vec([tab[-1][-1]])[0])


def _normalize(constraint):
    a, rel, b = constraint
    if rel not in RELATIONS:
        raise ValueError(f"unknown relation {rel!r}")
    if rel in ("<=", "<"):
        a = tuple(-Fraction(x) for x in a)
        b = -Fraction(b)
        rel = ">=" if rel == "<=" else ">"
    return tuple(Fraction(x) for x in a), rel, Fraction(b)


def strict_lp_certificate(constraints: Sequence[tuple[Sequence, str, object]]) -> Vector | None:
    """Exact point satisfying every constraint, strict ones strictly, or None.

    A slack ``t`` in ``[0, 1]`` is subtracted from every strict constraint and
    maximized; the system is strictly feasible iff the optimum is positive.
    """
    cons = [_normalize(c) for c in constraints]
    if not cons:
        raise ValueError("need at least one constraint to fix the dimension")
    d = len(cons[0][0])
    rows = []
    for a, rel, b in cons:
        rows.append((a + (Fraction(-1) if rel == ">" else Fraction(0),), b))
    rows.append(((Fraction(0),) * d + (Fraction(1),), Fraction(0)))
    rows.append(((Fraction(0),) * d + (Fraction(-1),), Fraction(-1)))
    res = maximize((0,) * d + (1,), rows)
    if res.status != "optimal":
        return None
    has_strict = any(rel == ">" for _, rel, _ in cons)
    if has_strict and res.value <= 0:
        return None
    return res.x[:d]
