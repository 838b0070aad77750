import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from copfaces.core import (
    DimensionMismatchError,
    IndexRangeError,
    InvariantViolationError,
    OrderLimitError,
    ParseError,
    SimplexVector,
    SymMatrix,
    check_order,
    horn_matrix,
    matvec_row,
    quad_form,
    rational,
    rational_str,
    support,
    unit_vector,
)


def sv(*coords):
    return SimplexVector(coords)


def test_support_examples():
    assert support(sv("1/2", "1/2", 0)) == (
        sv("1/2", "1/2", 0).support,
        sv("1/2", "1/2", 0).zero_set,
    )
    assert support(sv("1/2", "1/2", 0))[0].indices == (1, 2)
    assert support(sv("1/2", "1/2", 0))[1].indices == (3,)
    assert support(sv(1, 0))[0].indices == (1,)
    assert support(sv(1, 0))[1].indices == (2,)
    assert support(sv("1/3", "1/3", "1/3"))[0].indices == (1, 2, 3)
    assert support(sv("1/3", "1/3", "1/3"))[1].indices == ()


def test_quad_form_examples():
    assert quad_form(SymMatrix.identity(3), sv("1/3", "1/3", "1/3")) == Fraction(1, 3)
    ray = SymMatrix.from_rows([[1, -1], [-1, 1]])
    assert quad_form(ray, sv("1/2", "1/2")) == 0
    assert quad_form(horn_matrix(), sv("1/2", "1/2", 0, 0, 0)) == 0


def test_matvec_row_examples():
    ray = SymMatrix.from_rows([[1, -1], [-1, 1]])
    assert matvec_row(ray, sv("1/2", "1/2"), 1) == 0
    assert matvec_row(SymMatrix.identity(2), sv(1, 0), 2) == 0
    off = SymMatrix.from_rows([[0, 1], [1, 0]])
    assert matvec_row(off, sv(1, 0), 2) == 1


def test_horn_row_products_at_edge_midpoint():
    H = horn_matrix()
    tau = sv("1/2", "1/2", 0, 0, 0)
    assert [matvec_row(H, tau, k) for k in range(1, 6)] == [0, 0, 0, 1, 0]


def test_simplex_vector_validation():
    with pytest.raises(InvariantViolationError):
        SimplexVector(["1/2", "1/4"])
    with pytest.raises(InvariantViolationError):
        SimplexVector(["3/2", "-1/2"])
    with pytest.raises(ParseError):
        SimplexVector([0.5, 0.5])


def test_rational_parsing():
    assert rational("2/4") == Fraction(1, 2)
    assert rational_str(Fraction(-6, 4)) == "-3/2"
    assert rational_str(Fraction(4, 2)) == "2"
    with pytest.raises(ParseError):
        rational("1.5")
    with pytest.raises(ParseError):
        rational(1.5)


def test_matrix_validation_and_access():
    with pytest.raises(InvariantViolationError):
        SymMatrix.from_rows([[0, 1], [2, 0]])
    M = SymMatrix.from_rows([[1, 2], [2, 3]])
    assert M.entry(2, 1) == 2
    assert M.row(2) == (2, 3)
    with pytest.raises(IndexRangeError):
        M.entry(0, 1)
    with pytest.raises(DimensionMismatchError):
        quad_form(M, sv("1/2", "1/4", "1/4"))
    with pytest.raises(IndexRangeError):
        matvec_row(M, sv("1/2", "1/2"), 3)


def test_order_limit():
    with pytest.raises(OrderLimitError):
        check_order(9)
    check_order(9, max_p=9)


simplex_vectors = st.integers(2, 5).flatmap(
    lambda p: st.lists(st.integers(0, 9), min_size=p, max_size=p).filter(any)
)


@settings(max_examples=60, deadline=None)
@given(simplex_vectors, st.randoms(use_true_random=False))
def test_simplex_and_quadform_invariants(weights, rnd):
    total = sum(weights)
    t = SimplexVector([Fraction(w, total) for w in weights])
    assert sum(t.coords) == 1
    plus, zero = support(t)
    assert set(plus.indices) | set(zero.indices) == set(range(1, t.p + 1))
    assert set(plus.indices) & set(zero.indices) == set()
    entries = [
        [Fraction(rnd.randint(-4, 4), rnd.randint(1, 3)) for _ in range(t.p)]
        for _ in range(t.p)
    ]
    rows = [
        [entries[min(a, b)][max(a, b)] for b in range(t.p)] for a in range(t.p)
    ]
    D = SymMatrix.from_rows(rows)
    total_form = sum(
        (t.coords[k - 1] * matvec_row(D, t, k) for k in range(1, t.p + 1)), Fraction(0)
    )
    assert quad_form(D, t) == total_form


def test_unit_vector():
    assert unit_vector(2, 3).coords == (0, 1, 0)
    with pytest.raises(IndexRangeError):
        unit_vector(4, 3)
