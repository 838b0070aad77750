"""Exact global minimization of quadratic forms over the standard simplex.

This is the ground-truth oracle for copositivity, zero sets and minimal zeros
of a single matrix.  The algorithm enumerates all 2^p - 1 supports in order of
increasing cardinality (then lexicographic) and solves the exact stationarity
system on each face; the restricted gradient of t^T D t on a face must be
proportional to the all-ones vector.  Singular systems are handled through
their affine solution set, on which the form is provably constant, so every
candidate value is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import lp
from .core import (
    DEFAULT_MAX_P,
    IndexSet,
    NotCopositiveError,
    SimplexVector,
    SymMatrix,
    check_order,
    quad_form,
)
from .linalg import solve_affine


@dataclass(frozen=True)
class SupportPiece:
    """One support-indexed polyhedral piece of a zero / minimizer set."""

    support: IndexSet
    point: SimplexVector
    degrees_of_freedom: int
    kernel: tuple = field(default=(), compare=False)  # basis of the piece's direction space


@dataclass(frozen=True)
class SimplexQPResult:
    min_value: Fraction
    minimizers: tuple  # one relative-interior representative per minimizing piece
    pieces: tuple = field(default=(), compare=False)
    supports_enumerated: int = 0


def _supports(p: int):
    """All nonempty subsets of {1..p} by increasing cardinality, then lex."""
    for size in range(1, p + 1):
        yield from combinations(range(1, p + 1), size)


def _embed(support: Sequence[int], x: Sequence[Fraction], p: int) -> SimplexVector:
    coords = [Fraction(0)] * p
    for k, v in zip(support, x):
        coords[k - 1] = v
    return SimplexVector(coords)


def _stationary_on_face(D: SymMatrix, support: Sequence[int]):
    """Solve D_SS x = gamma * e, e^T x = 1 on the face's affine hull.

    Returns (x0, gamma, kernel) or None when no stationary point exists.
    Kernel vectors span the solution set in x-space (their gamma component
    vanishes identically because D is symmetric).
    """
    s = len(support)
    rows = []
    for a in support:
        row = [D.entry(a, b) for b in support] + [Fraction(-1)]
        rows.append(row)
    rows.append([Fraction(1)] * s + [Fraction(0)])
    rhs = [Fraction(0)] * s + [Fraction(1)]
    solved = solve_affine(rows, rhs)
    if solved is None:
        return None
    sol, null = solved
    x0, gamma = sol[:s], sol[s]
    kernel = tuple(tuple(v[:s]) for v in null)
    return x0, gamma, kernel


def _relative_interior_point(x0, kernel, upper=Fraction(1)):
    """Maximize the minimum coordinate over x0 + span(kernel); exact LP.

    Returns (best_min_coordinate, point).
    """
    s = len(x0)
    if not kernel:
        return min(x0), list(x0)
    d = len(kernel)
    # variables: s_1..s_d free, m free; maximize m
    objective = [Fraction(0)] * d + [Fraction(-1)]
    rows = []
    for k in range(s):
        coeffs = [kernel[i][k] for i in range(d)] + [Fraction(-1)]
        rows.append((coeffs, lp.GE, -x0[k]))
    rows.append(([Fraction(0)] * d + [Fraction(1)], lp.LE, upper))
    bounds = [(None, None)] * (d + 1)
    res = lp.solve_lp(lp.linear_program(objective, rows, bounds))
    if res.status != lp.OPTIMAL:
        raise AssertionError("relative-interior LP must be solvable")
    coeffs = res.x[:d]
    point = list(x0)
    for i in range(d):
        if coeffs[i] != 0:
            point = [a + coeffs[i] * b for a, b in zip(point, kernel[i])]
    return res.x[d], point


def min_quad_over_simplex(D: SymMatrix, max_p: int = DEFAULT_MAX_P) -> SimplexQPResult:
    """Exact global minimum of t^T D t over the standard simplex."""
    check_order(D.p, max_p)
    p = D.p
    best: Optional[Fraction] = None
    candidates = []  # (support, x0, gamma, kernel)
    count = 0
    for support in _supports(p):
        count += 1
        st = _stationary_on_face(D, support)
        if st is None:
            continue
        x0, gamma, kernel = st
        if not kernel:
            if any(v < 0 for v in x0):
                continue
            feas_value = gamma
        else:
            m, point = _relative_interior_point(x0, kernel)
            if m < 0:
                continue
            x0 = point
            feas_value = gamma
        candidates.append((support, x0, gamma, kernel))
        if best is None or feas_value < best:
            best = feas_value
    assert best is not None  # singleton supports always produce candidates
    pieces = []
    minimizers = []
    for support, x0, gamma, kernel in candidates:
        if gamma != best:
            continue
        m, point = _relative_interior_point(x0, kernel)
        if m <= 0:
            continue  # no strict-support representative; owned by a smaller support
        piece = SupportPiece(
            IndexSet(support, p),
            _embed(support, point, p),
            len(kernel),
            kernel,
        )
        pieces.append(piece)
        minimizers.append(piece.point)
    return SimplexQPResult(best, tuple(minimizers), tuple(pieces), count)


def is_copositive(D: SymMatrix, max_p: int = DEFAULT_MAX_P) -> bool:
    """t^T D t >= 0 for every nonnegative t; decided exactly."""
    check_order(D.p, max_p)
    if any(v < 0 for v in D.diag()):
        return False
    return min_quad_over_simplex(D, max_p).min_value >= 0


def copositivity_witness(D: SymMatrix, max_p: int = DEFAULT_MAX_P):
    """None when copositive, else a simplex vector with t^T D t < 0."""
    check_order(D.p, max_p)
    for k, v in enumerate(D.diag()):
        if v < 0:
            from .core import unit_vector

            return unit_vector(k + 1, D.p)
    res = min_quad_over_simplex(D, max_p)
    if res.min_value >= 0:
        return None
    return res.minimizers[0] if res.minimizers else None


def common_zero_pieces(matrices: Sequence[SymMatrix], max_p: int = DEFAULT_MAX_P):
    """Support-indexed pieces of the common zero set of copositive matrices.

    For copositive D, a zero with support S satisfies D_SS x = 0 (the rows of
    the support are annihilated), so the piece for S is the solution set of
    the stacked kernels intersected with the open face.
    """
    p = matrices[0].p
    check_order(p, max_p)
    pieces = []
    for support in _supports(p):
        s = len(support)
        rows = []
        for A in matrices:
            for a in support:
                rows.append([A.entry(a, b) for b in support])
        rows.append([Fraction(1)] * s)
        rhs = [Fraction(0)] * (len(rows) - 1) + [Fraction(1)]
        solved = solve_affine(rows, rhs)
        if solved is None:
            continue
        x0, null = solved
        kernel = tuple(tuple(v) for v in null)
        m, point = _relative_interior_point(x0, kernel)
        if m <= 0:
            continue
        pieces.append(
            SupportPiece(IndexSet(support, p), _embed(support, point, p), len(kernel), kernel)
        )
    return pieces


def zero_pieces_of_matrix(A: SymMatrix, max_p: int = DEFAULT_MAX_P):
    """All support-indexed pieces of the zero set of a single copositive matrix."""
    witness = copositivity_witness(A, max_p)
    if witness is not None:
        raise NotCopositiveError("matrix is not copositive", witness)
    return common_zero_pieces([A], max_p)


def minimal_zero_vectors(pieces) -> list:
    """Minimal zeros from a piece list: zero-dof pieces with inclusion-minimal supports."""
    supports = [set(piece.support.indices) for piece in pieces]
    out = []
    for i, piece in enumerate(pieces):
        if piece.degrees_of_freedom != 0:
            continue
        if any(j != i and supports[j] < supports[i] for j in range(len(pieces))):
            continue
        out.append(piece.point)
    return out


def minimal_zeros_of_matrix(A: SymMatrix, max_p: int = DEFAULT_MAX_P):
    """The minimal zeros of a copositive matrix (vertices of conv of its zero set)."""
    return minimal_zero_vectors(zero_pieces_of_matrix(A, max_p))


def min_quad_with_cut(D: SymMatrix, y: Sequence[Fraction], c: Fraction, max_p: int = DEFAULT_MAX_P):
    """Exact min of t^T D t over T intersected with the halfspace y^T t >= c.

    Returns (min_value, witness) or None when the region is empty.  Faces of
    the region are enumerated as (support, cut-active) pairs; on each face the
    form is constant over the stationary solution set, so one feasibility LP
    per face yields an exact candidate.
    """
    check_order(D.p, max_p)
    p = D.p
    y = [Fraction(v) for v in y]
    c = Fraction(c)
    best = None
    witness = None
    for support in _supports(p):
        s = len(support)
        ys = [y[k - 1] for k in support]
        for active in (False, True):
            rows = []
            for a in support:
                row = [D.entry(a, b) for b in support] + [Fraction(-1)]
                if active:
                    row.append(-y[a - 1])
                rows.append(row)
            width = s + (2 if active else 1)
            ones = [Fraction(1)] * s + [Fraction(0)] * (width - s)
            rows.append(ones)
            rhs = [Fraction(0)] * s + [Fraction(1)]
            if active:
                rows.append(ys + [Fraction(0), Fraction(0)])
                rhs.append(c)
            solved = solve_affine(rows, rhs)
            if solved is None:
                continue
            sol, null = solved
            x0 = sol[:s]
            kernel = [v[:s] for v in null]
            point = _feasible_point_on_cut(x0, kernel, ys, c, active)
            if point is None:
                continue
            t = _embed(support, point, p)
            value = quad_form(D, t)
            if best is None or value < best:
                best, witness = value, t
    if best is None:
        return None
    return best, witness


def _feasible_point_on_cut(x0, kernel, ys, c, active):
    """A point of x0 + span(kernel) with x >= 0 and (inactive case) y^T x >= c."""
    s = len(x0)
    d = len(kernel)
    if d == 0:
        if any(v < 0 for v in x0):
            return None
        if not active and sum(a * b for a, b in zip(ys, x0)) < c:
            return None
        return list(x0)
    rows = []
    for k in range(s):
        coeffs = [kernel[i][k] for i in range(d)]
        rows.append((coeffs, lp.GE, -x0[k]))
    if not active:
        coeffs = [sum(ys[k] * kernel[i][k] for k in range(s)) for i in range(d)]
        rows.append((coeffs, lp.GE, c - sum(a * b for a, b in zip(ys, x0))))
    bounds = [(None, None)] * d
    res = lp.solve_lp(lp.linear_program([Fraction(0)] * d, rows, bounds))
    if res.status != lp.OPTIMAL:
        return None
    point = list(x0)
    for i in range(d):
        if res.x[i] != 0:
            point = [a + res.x[i] * b for a, b in zip(point, kernel[i])]
    return point
