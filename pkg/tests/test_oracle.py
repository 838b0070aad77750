import random
from fractions import Fraction
from itertools import combinations

import pytest

from copfaces.core import (
    NotCopositiveError,
    OrderLimitError,
    SimplexVector,
    SymMatrix,
    horn_matrix,
    matvec_row,
    quad_form,
)
from copfaces.geometry import simplex_grid
from copfaces.oracle import (
    is_copositive,
    min_quad_over_simplex,
    min_quad_with_cut,
    minimal_zeros_of_matrix,
    zero_pieces_of_matrix,
)

from conftest import rational_in


def sv(*coords):
    return SimplexVector(coords)


def grid_min(D: SymMatrix, den: int) -> Fraction:
    """Independent brute-force lower-bound oracle: evaluate every grid point."""
    return min(quad_form(D, t) for t in simplex_grid(D.p, den))


def random_symmetric(rng, p):
    entries = [[rational_in(rng) for _ in range(p)] for _ in range(p)]
    rows = [[entries[min(a, b)][max(a, b)] for b in range(p)] for a in range(p)]
    return SymMatrix.from_rows(rows)


def test_min_quad_examples():
    res = min_quad_over_simplex(SymMatrix.identity(3))
    assert res.min_value == Fraction(1, 3)
    assert res.minimizers == (sv("1/3", "1/3", "1/3"),)

    ray = SymMatrix.from_rows([[1, -1], [-1, 1]])
    res = min_quad_over_simplex(ray)
    assert res.min_value == 0
    assert res.minimizers == (sv("1/2", "1/2"),)

    res = min_quad_over_simplex(horn_matrix())
    assert res.min_value == 0
    supports = {p.support.indices for p in res.pieces}
    assert {(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)} <= supports


def test_is_copositive_examples():
    assert is_copositive(SymMatrix.identity(4))
    assert is_copositive(SymMatrix.from_rows([[0, 1], [1, 0]]))
    assert not is_copositive(SymMatrix.identity(2).scale(-1))
    assert is_copositive(horn_matrix())


def test_zero_pieces_examples():
    ray = SymMatrix.from_rows([[1, -1], [-1, 1]])
    pieces = zero_pieces_of_matrix(ray)
    assert len(pieces) == 1
    piece = pieces[0]
    assert piece.support.indices == (1, 2)
    assert piece.point == sv("1/2", "1/2")
    assert piece.degrees_of_freedom == 0

    assert zero_pieces_of_matrix(SymMatrix.identity(3)) == []

    with pytest.raises(NotCopositiveError):
        zero_pieces_of_matrix(SymMatrix.identity(2).scale(-1))


def test_horn_zero_structure():
    """Frozen from the independent dense-grid + support-enumeration oracle:
    the zero set is the cycle of segments between adjacent edge midpoints."""
    pieces = zero_pieces_of_matrix(horn_matrix())
    by_dof = {}
    for piece in pieces:
        by_dof.setdefault(piece.degrees_of_freedom, set()).add(piece.support.indices)
    assert by_dof[0] == {(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)}
    assert by_dof[1] == {(1, 2, 3), (2, 3, 4), (3, 4, 5), (1, 4, 5), (1, 2, 5)}
    assert set(by_dof) == {0, 1}

    zeros = minimal_zeros_of_matrix(horn_matrix())
    expected = set()
    for i in range(5):
        coords = [Fraction(0)] * 5
        coords[i] = Fraction(1, 2)
        coords[(i + 1) % 5] = Fraction(1, 2)
        expected.add(SimplexVector(coords))
    assert set(zeros) == expected


def test_minimal_zeros_examples():
    ray = SymMatrix.from_rows([[1, -1], [-1, 1]])
    assert minimal_zeros_of_matrix(ray) == [sv("1/2", "1/2")]
    assert set(minimal_zeros_of_matrix(SymMatrix.zeros(3))) == {
        sv(1, 0, 0),
        sv(0, 1, 0),
        sv(0, 0, 1),
    }


def test_order_limit_fails_fast():
    big = SymMatrix.zeros(9)
    with pytest.raises(OrderLimitError):
        min_quad_over_simplex(big)
    assert is_copositive(big, max_p=9)


def test_oracle_soundness_random():
    """Listed minimizers achieve the minimum; random points never beat it."""
    rng = random.Random(42)
    for _ in range(25):
        p = rng.choice((2, 3, 4))
        D = random_symmetric(rng, p)
        res = min_quad_over_simplex(D)
        for t in res.minimizers:
            assert quad_form(D, t) == res.min_value
        for _ in range(40):
            weights = [rng.randint(0, 8) for _ in range(p)]
            if not any(weights):
                continue
            total = sum(weights)
            t = SimplexVector([Fraction(w, total) for w in weights])
            assert quad_form(D, t) >= res.min_value
        assert res.supports_enumerated == 2**p - 1


def test_zero_pieces_satisfy_row_conditions():
    """Every piece point annihilates its support rows and keeps the rest nonnegative."""
    rng = random.Random(9)
    from conftest import random_psd_plus_nonneg, random_simplex_vector

    for _ in range(20):
        p = rng.choice((2, 3, 4))
        tau = random_simplex_vector(rng, p)
        A = random_psd_plus_nonneg(rng, p, [tau])
        assert quad_form(A, tau) == 0
        pieces = zero_pieces_of_matrix(A)
        assert pieces, "a forced zero must produce at least one piece"
        for piece in pieces:
            t = piece.point
            assert quad_form(A, t) == 0
            for k in range(1, p + 1):
                v = matvec_row(A, t, k)
                assert v == 0 if k in piece.support else v >= 0


def test_minimal_zero_supports_form_antichain():
    rng = random.Random(10)
    from conftest import random_psd_plus_nonneg, random_simplex_vector

    for _ in range(20):
        p = rng.choice((3, 4))
        tau = random_simplex_vector(rng, p)
        A = random_psd_plus_nonneg(rng, p, [tau])
        zeros = minimal_zeros_of_matrix(A)
        supports = [set(z.support.indices) for z in zeros]
        for a, b in combinations(range(len(supports)), 2):
            assert not supports[a] <= supports[b]
            assert not supports[b] <= supports[a]


def test_grid_lower_bound_agreement():
    """Nested grids: the grid minimum is an upper bound decreasing toward the
    exact minimum as the grid refines."""
    rng = random.Random(12)
    for _ in range(8):
        p = rng.choice((2, 3, 4))
        D = random_symmetric(rng, p)
        exact = min_quad_over_simplex(D).min_value
        gaps = [grid_min(D, den) - exact for den in (4, 8, 16)]
        assert all(g >= 0 for g in gaps)
        assert gaps[0] >= gaps[1] >= gaps[2]


def test_min_quad_with_cut():
    D = SymMatrix.identity(2)
    # over T with cut t_1 >= 3/4, min of t1^2 + t2^2 is at (3/4, 1/4)
    hit = min_quad_with_cut(D, (Fraction(1), Fraction(0)), Fraction(3, 4))
    assert hit is not None
    value, witness = hit
    assert value == Fraction(10, 16)
    assert witness == sv("3/4", "1/4")
    # empty region
    assert min_quad_with_cut(D, (Fraction(1), Fraction(0)), Fraction(2)) is None
    # indefinite matrix: global min over T is negative
    M = SymMatrix.from_rows([[0, -1], [-1, 0]])
    value, witness = min_quad_with_cut(M, (Fraction(1), Fraction(1)), Fraction(0))
    assert value == min_quad_over_simplex(M).min_value == Fraction(-1, 2)
