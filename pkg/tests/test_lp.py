import random
from fractions import Fraction

import pytest

from copfaces import lp
from copfaces.lp import EQ, GE, LE, linear_program, solve_lp


def test_simple_bound():
    res = solve_lp(linear_program([1], [((1,), GE, 3)]))
    assert (res.status, res.value, res.x) == ("optimal", 3, (3,))


def test_infeasible():
    res = solve_lp(linear_program([0], [((1,), LE, -1)]))
    assert res.status == "infeasible"


def test_unbounded():
    res = solve_lp(linear_program([-1], []))
    assert res.status == "unbounded"


def test_hull_distance_instance():
    # min sum(u+v) s.t. u - v + V alpha = t, sum alpha = 1 (the l1-distance LP)
    V = [(Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0))]
    t = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
    rows = []
    for k in range(3):
        co = [Fraction(0)] * 8
        co[k] = Fraction(1)
        co[3 + k] = Fraction(-1)
        co[6] = V[0][k]
        co[7] = V[1][k]
        rows.append((co, EQ, t[k]))
    rows.append(([0] * 6 + [1, 1], EQ, 1))
    res = solve_lp(linear_program([1] * 6 + [0, 0], rows))
    assert res.status == "optimal" and res.value == Fraction(1, 2)


def test_free_variables_and_equalities():
    res = solve_lp(
        linear_program(
            [1, 1],
            [((1, 1), GE, -5), ((1, -1), EQ, 1)],
            bounds=[(None, None), (None, None)],
        )
    )
    assert res.status == "optimal"
    assert res.value == -5
    assert res.x[0] - res.x[1] == 1


def test_upper_bounds():
    res = solve_lp(linear_program([-1], [], bounds=[(0, 7)]))
    assert (res.status, res.value) == ("optimal", -7)
    res = solve_lp(linear_program([1], [], bounds=[(None, 4)]))
    assert res.status == "unbounded"
    res = solve_lp(linear_program([-1], [], bounds=[(None, 4)]))
    assert (res.status, res.value) == ("optimal", -4)


def test_degenerate_cycle_guard():
    # Beale-style degenerate instance; Bland's rule must terminate.
    rows = [
        ((Fraction(1, 4), -60, Fraction(-1, 25), 9), LE, 0),
        ((Fraction(1, 2), -90, Fraction(-1, 50), 3), LE, 0),
        ((0, 0, 1, 0), LE, 1),
    ]
    res = solve_lp(linear_program([Fraction(-3, 4), 150, Fraction(-1, 50), 6], rows))
    assert res.status == "optimal"
    assert res.value == Fraction(-1, 20)


def _random_lp(rng):
    n = rng.randint(1, 4)
    m = rng.randint(1, 4)
    c = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
    rows = []
    for _ in range(m):
        coeffs = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
        rows.append((coeffs, GE, Fraction(rng.randint(-4, 2))))
    return c, rows


def test_lp_duality_on_random_instances():
    """Exact strong duality: min c x, Ax >= b, x >= 0 versus max b y, A^T y <= c."""
    rng = random.Random(7)
    solved = 0
    for _ in range(120):
        c, rows = _random_lp(rng)
        primal = solve_lp(linear_program(c, rows))
        A = [row[0] for row in rows]
        b = [row[2] for row in rows]
        dual_rows = []
        for j in range(len(c)):
            dual_rows.append((tuple(A[i][j] for i in range(len(A))), LE, c[j]))
        dual = solve_lp(linear_program([-v for v in b], dual_rows))
        if primal.status == "optimal":
            assert dual.status == "optimal"
            assert -dual.value == primal.value
            solved += 1
        elif primal.status == "unbounded":
            assert dual.status == "infeasible"
        else:
            assert dual.status in ("unbounded", "infeasible")
    assert solved >= 20


def test_feasible_solutions_respect_constraints():
    rng = random.Random(11)
    for _ in range(60):
        c, rows = _random_lp(rng)
        res = solve_lp(linear_program(c, rows))
        if res.status != "optimal":
            continue
        assert all(v >= 0 for v in res.x)
        for coeffs, rel, rhs in rows:
            lhs = sum(a * b for a, b in zip(coeffs, res.x))
            assert lhs >= rhs
