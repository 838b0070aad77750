"""Pure-Python exact-rational kernels: RREF and Bland-rule simplex pivoting.

The compiled backend in ``_speedups`` implements the same two functions with
identical pivot selection, so results are bit-for-bit interchangeable.
"""

from __future__ import annotations

from fractions import Fraction

BACKEND_NAME = "pure"


def rref(rows):
    """Reduced row echelon form over Fractions.

    Returns ``(new_rows, pivot_cols)``; the input is not mutated.
    """
    m = len(rows)
    if m == 0:
        return [], []
    n = len(rows[0])
    R = [list(row) for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        pr = -1
        for i in range(r, m):
            if R[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        R[r], R[pr] = R[pr], R[r]
        piv = R[r][c]
        if piv != 1:
            R[r] = [v / piv for v in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                Ri, Rr = R[i], R[r]
                R[i] = [a - f * b for a, b in zip(Ri, Rr)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def simplex_core(tableau, basis):
    """Pivot a prepared simplex tableau to optimality with Bland's rule.

    ``tableau`` has constraint rows ``[A | b]`` (b >= 0, identity embedded on
    the ``basis`` columns) and a final reduced-cost row ``[cbar | -z]``.
    Mutates both arguments.  Returns -1 on optimality, else the entering
    column index witnessing unboundedness.
    """
    m = len(tableau) - 1
    ncols = len(tableau[0]) - 1
    obj = tableau[m]
    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return -1
        leave = -1
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][ncols] / a
                if (
                    leave < 0
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    leave, best = i, ratio
        if leave < 0:
            return enter
        piv_row = tableau[leave]
        piv = piv_row[enter]
        if piv != 1:
            piv_row = [v / piv for v in piv_row]
            tableau[leave] = piv_row
        for i in range(m + 1):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                Ri = tableau[i]
                tableau[i] = [a - f * b for a, b in zip(Ri, piv_row)]
        basis[leave] = enter
