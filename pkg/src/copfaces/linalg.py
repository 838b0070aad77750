"""Small exact linear-algebra helpers on top of the RREF kernel."""

from __future__ import annotations

from fractions import Fraction

from ._kernels import rref


def rank(rows) -> int:
    return len(rref(rows)[1]) if rows else 0


def solve_affine(rows, rhs):
    """Solve ``A x = b`` exactly.

    Returns ``(particular, nullspace_basis)`` or None when inconsistent.
    """
    if not rows:
        return [], []
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug)
    if any(c == n for c in pivots):
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    pivot_set = set(pivots)
    basis = []
    for fc in range(n):
        if fc in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row, c in zip(R, pivots):
            v[c] = -row[fc]
        basis.append(v)
    return x, basis


def nullspace(rows):
    if not rows:
        return []
    solved = solve_affine(rows, [Fraction(0)] * len(rows))
    return solved[1]


class RationalSpan:
    """Incremental span of exact vectors with O(dim) membership tests."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows = []  # (pivot_col, normalized row), kept mutually reduced

    def _reduce(self, vec):
        v = list(vec)
        for pc, row in self._rows:
            f = v[pc]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self._reduce(vec))

    def add(self, vec) -> bool:
        """Insert a vector; True when it enlarged the span."""
        v = self._reduce(vec)
        pc = next((i for i, x in enumerate(v) if x != 0), -1)
        if pc < 0:
            return False
        piv = v[pc]
        if piv != 1:
            v = [x / piv for x in v]
        for idx, (c, row) in enumerate(self._rows):
            f = row[pc]
            if f != 0:
                self._rows[idx] = (c, [a - f * b for a, b in zip(row, v)])
        self._rows.append((pc, v))
        self._rows.sort(key=lambda item: item[0])
        return True

    @property
    def dimension(self) -> int:
        return len(self._rows)
