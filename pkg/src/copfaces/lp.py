"""Exact linear programming: two-phase tableau simplex with Bland's rule.

Everything is Fraction arithmetic; degeneracy is handled deterministically
(lowest-index entering column, lowest-ratio then lowest-basis-index leaving
row), so identical inputs always produce identical basic solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._kernels import simplex_core
from .core import DimensionMismatchError, rational

LE, GE, EQ = "<=", ">=", "=="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """min c^T x  s.t.  rows (a, rel, b), per-variable bounds (lo, hi).

    ``rel`` is one of "<=", ">=", "=="; a bound of None means unbounded on
    that side.  The default bound is (0, None).
    """

    objective: tuple
    rows: tuple
    bounds: tuple

    @property
    def n(self) -> int:
        return len(self.objective)


def linear_program(objective: Sequence, rows: Sequence, bounds=None) -> LinearProgram:
    obj = tuple(rational(c) for c in objective)
    n = len(obj)
    norm_rows = []
    for coeffs, rel, rhs in rows:
        coeffs = tuple(rational(c) for c in coeffs)
        if len(coeffs) != n:
            raise DimensionMismatchError("row length != number of variables")
        if rel not in (LE, GE, EQ):
            raise DimensionMismatchError(f"unknown relation {rel!r}")
        norm_rows.append((coeffs, rel, rational(rhs)))
    if bounds is None:
        norm_bounds = tuple((Fraction(0), None) for _ in range(n))
    else:
        if len(bounds) != n:
            raise DimensionMismatchError("bounds length != number of variables")
        norm_bounds = tuple(
            (None if lo is None else rational(lo), None if hi is None else rational(hi))
            for lo, hi in bounds
        )
    return LinearProgram(obj, tuple(norm_rows), norm_bounds)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction]
    x: Optional[tuple]

    def __iter__(self):
        return iter((self.status, self.value, self.x))


def solve_lp(lp: LinearProgram) -> LPResult:
    """Exact optimum of ``lp``; status is optimal, infeasible or unbounded."""
    n = lp.n
    # Standard columns, one or two per variable:
    #   shift  x = lo + y   (y >= 0)
    #   mirror x = hi - y   (y >= 0)
    #   split  x = y+ - y-  (both >= 0)
    std_cols = []  # (orig var, sign)
    offsets = [Fraction(0)] * n
    extra_rows = []
    for j, (lo, hi) in enumerate(lp.bounds):
        if lo is not None:
            std_cols.append((j, Fraction(1)))
            offsets[j] = lo
            if hi is not None:
                coeffs = tuple(Fraction(1) if k == j else Fraction(0) for k in range(n))
                extra_rows.append((coeffs, LE, hi))
        elif hi is not None:
            std_cols.append((j, Fraction(-1)))
            offsets[j] = hi
        else:
            std_cols.append((j, Fraction(1)))
            std_cols.append((j, Fraction(-1)))

    all_rows = list(lp.rows) + extra_rows
    m = len(all_rows)
    n_std = len(std_cols)

    std_rows = []
    for coeffs, rel, rhs in all_rows:
        row = [coeffs[var] * sign for var, sign in std_cols]
        shift = sum((coeffs[j] * offsets[j] for j in range(n)), Fraction(0))
        std_rows.append((row, rel, rhs - shift))
    c_std = [lp.objective[var] * sign for var, sign in std_cols]

    # Slack/surplus columns; rhs made nonnegative.
    slack_at = {}
    col = n_std
    for i, (_, rel, _) in enumerate(std_rows):
        if rel != EQ:
            slack_at[i] = col
            col += 1
    ncols = col
    body = []
    rhs_vec = []
    for i, (row, rel, rhs) in enumerate(std_rows):
        full = row + [Fraction(0)] * (ncols - n_std)
        if rel == LE:
            full[slack_at[i]] = Fraction(1)
        elif rel == GE:
            full[slack_at[i]] = Fraction(-1)
        if rhs < 0:
            full = [-v for v in full]
            rhs = -rhs
        body.append(full)
        rhs_vec.append(rhs)

    # Phase 1 with artificial columns wherever no +1 slack is available.
    basis = [-1] * m
    for i in range(m):
        j = slack_at.get(i)
        if j is not None and body[i][j] == 1:
            basis[i] = j
    art_cols = []
    art = ncols
    for i in range(m):
        if basis[i] < 0:
            art_cols.append(art)
            basis[i] = art
            art += 1
    total_cols = ncols + len(art_cols)
    tableau = []
    for i in range(m):
        pad = [Fraction(0)] * (total_cols - ncols)
        if basis[i] >= ncols:
            pad[basis[i] - ncols] = Fraction(1)
        tableau.append(body[i] + pad + [rhs_vec[i]])

    if art_cols:
        objrow = [Fraction(0)] * (total_cols + 1)
        for i in range(m):
            if basis[i] in set(art_cols):
                objrow = [a - b for a, b in zip(objrow, tableau[i])]
        for j in art_cols:
            objrow[j] = Fraction(0)
        tableau.append(objrow)
        if simplex_core(tableau, basis) != -1:
            raise AssertionError("phase-1 objective is bounded below by construction")
        if tableau[m][total_cols] != 0:
            return LPResult(INFEASIBLE, None, None)
        tableau.pop()
        art_set = set(art_cols)
        drop = []
        for i in range(m):
            if basis[i] in art_set:
                pivot_col = next((j for j in range(ncols) if tableau[i][j] != 0), None)
                if pivot_col is None:
                    drop.append(i)
                else:
                    _pivot(tableau, basis, i, pivot_col)
        for i in sorted(drop, reverse=True):
            tableau.pop(i)
            basis.pop(i)
        m = len(tableau)
        tableau = [row[:ncols] + [row[total_cols]] for row in tableau]

    # Phase 2.
    obj = list(c_std) + [Fraction(0)] * (ncols - n_std) + [Fraction(0)]
    for i in range(m):
        cb = c_std[basis[i]] if basis[i] < n_std else Fraction(0)
        if cb != 0:
            obj = [a - cb * b for a, b in zip(obj, tableau[i])]
    tableau.append(obj)
    if simplex_core(tableau, basis) != -1:
        return LPResult(UNBOUNDED, None, None)

    x_std = [Fraction(0)] * ncols
    for i in range(m):
        x_std[basis[i]] = tableau[i][ncols]
    x = list(offsets)
    for pos, (var, sign) in enumerate(std_cols):
        x[var] += sign * x_std[pos]
    value = sum((c * v for c, v in zip(lp.objective, x)), Fraction(0))
    return LPResult(OPTIMAL, value, tuple(x))


def _pivot(tableau, basis, row, col):
    piv_row = tableau[row]
    piv = piv_row[col]
    if piv != 1:
        piv_row = [v / piv for v in piv_row]
        tableau[row] = piv_row
    for i in range(len(tableau)):
        if i != row and tableau[i][col] != 0:
            f = tableau[i][col]
            tableau[i] = [a - f * b for a, b in zip(tableau[i], piv_row)]
    basis[row] = col
