import random
from fractions import Fraction

import pytest

from oracles import fm_feasible
from toricert.lp import maximize, strict_lp_certificate


def test_maximize_small():
    # max x + y with x <= 2, y <= 3, x + y <= 4
    res = maximize((1, 1), [((-1, 0), -2), ((0, -1), -3), ((-1, -1), -4)])
    assert res.status == "optimal"
    assert res.value == 4


def test_maximize_unbounded_and_infeasible():
    assert maximize((1,), [((1,), 0)]).status == "unbounded"
    assert maximize((1,), [((1,), 1), ((-1,), 0)]).status == "infeasible"


def test_maximize_nonnegative_variables():
    res = maximize((-1, -1), [((1, 1), 2)], free=False)
    assert res.status == "optimal"
    assert res.value == -2
    assert all(x >= 0 for x in res.x)


def test_degenerate_problem_terminates():
    # a classic cycling example for the largest-coefficient rule
    cons = [((Fraction(-1, 4), 8, 1, -9), 0), ((Fraction(-1, 2), 12, Fraction(1, 2), -3), 0),
            ((0, 0, -1, 0), -1)]
    res = maximize((Fraction(3, 4), -20, Fraction(1, 2), -6), cons, free=False)
    assert res.status == "optimal"
    assert res.value == Fraction(5, 4)


def test_strict_examples():
    x = strict_lp_certificate([((1,), ">", 0), ((1,), ">=", -1)])
    assert x is not None and x[0] > 0
    assert strict_lp_certificate([((1,), ">", 0), ((-1,), ">", 0)]) is None
    w = strict_lp_certificate([((1, 1), ">", 0), ((1, -1), ">", 0), ((1, 0), "<=", 1)])
    assert w is not None
    assert 0 < w[0] <= 1 and abs(w[1]) < w[0]


def test_bad_relation():
    with pytest.raises(ValueError):
        strict_lp_certificate([((1,), "=", 0)])


def test_strict_agrees_with_fourier_motzkin():
    rng = random.Random(2024)
    for _ in range(300):
        d = rng.randint(1, 4)
        m = rng.randint(1, 10)
        cons = []
        for _ in range(m):
            a = tuple(rng.randint(-3, 3) for _ in range(d))
            cons.append((a, rng.choice([">", ">=", "<", "<="]), rng.randint(-3, 3)))
        fm = []
        for a, rel, b in cons:
            if rel in ("<", "<="):
                a, b = tuple(-x for x in a), -b
            fm.append((a, rel in (">", "<"), b))
        w = strict_lp_certificate(cons)
        assert (w is not None) == fm_feasible(fm)
        if w is not None:
            for a, rel, b in cons:
                lhs = sum(x * y for x, y in zip(a, w))
                assert {">": lhs > b, ">=": lhs >= b, "<": lhs < b, "<=": lhs <= b}[rel]
