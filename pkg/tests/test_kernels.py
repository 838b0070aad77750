"""The compiled and pure kernels must be interchangeable bit for bit."""

import random
from fractions import Fraction

import pytest

from copfaces import _kernels
from copfaces._kernels import pure

compiled = pytest.importorskip(
    "copfaces._kernels._speedups", reason="compiled kernel not built"
)


def _random_rows(rng, m, n):
    return [
        [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
        for _ in range(m)
    ]


def test_backend_is_reported():
    assert _kernels.BACKEND in ("pure", "compiled")


def test_rref_equivalence():
    rng = random.Random(3)
    for _ in range(120):
        rows = _random_rows(rng, rng.randint(1, 6), rng.randint(1, 7))
        got_rows, got_piv = compiled.rref(rows)
        want_rows, want_piv = pure.rref(rows)
        assert got_piv == want_piv
        assert got_rows == want_rows


def _random_tableau(rng):
    """A random standard-form phase-2 tableau with an embedded identity basis."""
    m = rng.randint(1, 4)
    extra = rng.randint(1, 4)
    n = m + extra
    rows = []
    basis = []
    for i in range(m):
        row = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(extra)]
        ident = [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        rhs = Fraction(rng.randint(0, 8), rng.randint(1, 2))
        rows.append(row + ident + [rhs])
        basis.append(extra + i)
    cost = [Fraction(rng.randint(-3, 3)) for _ in range(extra)] + [Fraction(0)] * m
    rows.append(cost + [Fraction(0)])
    return rows, basis


def test_simplex_equivalence():
    rng = random.Random(5)
    for _ in range(150):
        tableau, basis = _random_tableau(rng)
        t1 = [list(r) for r in tableau]
        b1 = list(basis)
        t2 = [list(r) for r in tableau]
        b2 = list(basis)
        r1 = compiled.simplex_core(t1, b1)
        r2 = pure.simplex_core(t2, b2)
        assert r1 == r2
        assert b1 == b2
        assert t1 == t2


def test_rref_identity_and_rank_deficient():
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    got, piv = compiled.rref(rows)
    assert piv == [0]
    assert got[0] == [Fraction(1), Fraction(2)]
    assert got[1] == [Fraction(0), Fraction(0)]
