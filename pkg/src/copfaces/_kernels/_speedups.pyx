# cython: language_level=3
"""Compiled exact-rational kernels.

Same pivot rules and return conventions as ``copfaces._kernels.pure``;
entries are kept as coprime (numerator, denominator) integer pairs so the
inner loops avoid Fraction object overhead.
"""

from fractions import Fraction
from math import gcd

BACKEND_NAME = "compiled"


cdef void _to_pairs(list rows, list N, list D):
    cdef Py_ssize_t i
    for i in range(len(rows)):
        row = rows[i]
        N.append([f.numerator for f in row])
        D.append([f.denominator for f in row])


cdef void _write_back(list rows, list N, list D):
    cdef Py_ssize_t i, j
    for i in range(len(N)):
        Ni = N[i]
        Di = D[i]
        rows[i] = [Fraction(Ni[j], Di[j]) for j in range(len(Ni))]


cdef void _scale_to_unit(list Nr, list Dr, object pn, object pd):
    # Divide the row by pn/pd (the pivot), leaving a 1 in the pivot column.
    cdef Py_ssize_t j, n = len(Nr)
    cdef object num, den, g
    for j in range(n):
        if Nr[j] == 0:
            continue
        num = Nr[j] * pd
        den = Dr[j] * pn
        if den < 0:
            num = -num
            den = -den
        g = gcd(num, den)
        if g != 1:
            num //= g
            den //= g
        Nr[j] = num
        Dr[j] = den


cdef void _axpy(list Ni, list Di, list Nr, list Dr, object fn, object fd):
    # row_i -= (fn/fd) * row_r with fd > 0.
    cdef Py_ssize_t j, n = len(Ni)
    cdef object bn, bd, num, den, g
    for j in range(n):
        bn = Nr[j]
        if bn == 0:
            continue
        bd = Dr[j]
        num = Ni[j] * fd * bd - fn * bn * Di[j]
        if num == 0:
            Ni[j] = 0
            Di[j] = 1
            continue
        den = Di[j] * fd * bd
        g = gcd(num, den)
        if g != 1:
            num //= g
            den //= g
        Ni[j] = num
        Di[j] = den


def rref(rows):
    """Reduced row echelon form over Fractions; returns (new_rows, pivot_cols)."""
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return [], []
    cdef list N = [], D = []
    _to_pairs(list(rows), N, D)
    cdef Py_ssize_t ncols = len(N[0])
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, pr
    for c in range(ncols):
        pr = -1
        for i in range(r, m):
            if N[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        N[r], N[pr] = N[pr], N[r]
        D[r], D[pr] = D[pr], D[r]
        _scale_to_unit(N[r], D[r], N[r][c], D[r][c])
        for i in range(m):
            if i != r and N[i][c] != 0:
                _axpy(N[i], D[i], N[r], D[r], N[i][c], D[i][c])
        pivots.append(c)
        r += 1
        if r == m:
            break
    out = []
    _write_back_into(out, N, D)
    return out, pivots


cdef void _write_back_into(list out, list N, list D):
    cdef Py_ssize_t i, j
    for i in range(len(N)):
        Ni = N[i]
        Di = D[i]
        out.append([Fraction(Ni[j], Di[j]) for j in range(len(Ni))])


def simplex_core(tableau, basis):
    """Bland-rule pivoting; -1 on optimality, else the unbounded entering column."""
    cdef Py_ssize_t m = len(tableau) - 1
    cdef Py_ssize_t ncols = len(tableau[0]) - 1
    cdef list N = [], D = []
    _to_pairs(list(tableau), N, D)
    cdef list objN = N[m]
    cdef Py_ssize_t enter, leave, i, j
    cdef object an, ad, rn, rd, bestn, bestd, lhs, rhs
    while True:
        enter = -1
        for j in range(ncols):
            if objN[j] < 0:
                enter = j
                break
        if enter < 0:
            _write_back(tableau, N, D)
            return -1
        leave = -1
        bestn = None
        bestd = None
        for i in range(m):
            an = N[i][enter]
            if an > 0:
                ad = D[i][enter]
                rn = N[i][ncols] * ad
                rd = D[i][ncols] * an
                if leave < 0:
                    leave = i
                    bestn = rn
                    bestd = rd
                else:
                    lhs = rn * bestd
                    rhs = bestn * rd
                    if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                        leave = i
                        bestn = rn
                        bestd = rd
        if leave < 0:
            _write_back(tableau, N, D)
            return enter
        _scale_to_unit(N[leave], D[leave], N[leave][enter], D[leave][enter])
        for i in range(m + 1):
            if i != leave and N[i][enter] != 0:
                _axpy(N[i], D[i], N[leave], D[leave], N[i][enter], D[i][enter])
        basis[leave] = enter
