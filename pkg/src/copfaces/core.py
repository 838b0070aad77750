"""Exact scalar arithmetic, simplex vectors, symmetric matrices and index sets.

All quantities are rational (`fractions.Fraction`); every comparison made by
this package is exact.  Floats are rejected at the boundary so that support
and zero bookkeeping can never be corrupted by rounding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

#: Largest matrix order accepted by the exhaustive routines (support
#: enumeration is 2^p - 1 subsets); callers may override per operation.
DEFAULT_MAX_P = 8

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class CopfacesError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(CopfacesError):
    pass


class IndexRangeError(CopfacesError):
    pass


class OrderLimitError(CopfacesError):
    """Matrix order exceeds the configured exhaustive-enumeration limit."""


class NotCopositiveError(CopfacesError):
    """An operation required a copositive matrix and got a witness against it."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class GridSizeError(CopfacesError):
    pass


class InvariantViolationError(CopfacesError):
    pass


class CertificationError(CopfacesError):
    pass


class ParseError(CopfacesError):
    pass


def rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to Fraction; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ParseError(f"malformed rational literal: {value!r}")
        return Fraction(value)
    raise ParseError(f"not an exact rational: {value!r} (floats are rejected)")


def rational_str(q: Fraction) -> str:
    """Serialize in lowest terms with positive denominator, e.g. ``"-3/7"``."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def check_order(p: int, max_p: int = DEFAULT_MAX_P) -> None:
    if p > max_p:
        raise OrderLimitError(f"order {p} exceeds exhaustive limit {max_p}")


class IndexSet:
    """A subset of P = {1, ..., p}, kept sorted; all external indices are 1-based."""

    __slots__ = ("indices", "p")

    def __init__(self, indices: Iterable[int], p: int):
        idx = sorted(set(int(k) for k in indices))
        if idx and (idx[0] < 1 or idx[-1] > p):
            raise IndexRangeError(f"indices {idx} outside 1..{p}")
        self.indices: tuple[int, ...] = tuple(idx)
        self.p = p

    def complement(self) -> "IndexSet":
        present = set(self.indices)
        return IndexSet((k for k in range(1, self.p + 1) if k not in present), self.p)

    def issubset(self, other: "IndexSet") -> bool:
        return set(self.indices) <= set(other.indices)

    def __contains__(self, k: int) -> bool:
        return k in self.indices

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return isinstance(other, IndexSet) and self.indices == other.indices and self.p == other.p

    def __hash__(self):
        return hash((self.indices, self.p))

    def __repr__(self):
        return f"IndexSet({set(self.indices) if self.indices else '{}'}, p={self.p})"


class SimplexVector:
    """A point of T = {t >= 0 : sum t_k = 1} with cached support."""

    __slots__ = ("coords", "p", "_support")

    def __init__(self, coords: Sequence):
        vals = tuple(rational(c) for c in coords)
        if not vals:
            raise DimensionMismatchError("empty coordinate vector")
        if any(c < 0 for c in vals):
            raise InvariantViolationError(f"negative coordinate in {vals}")
        if sum(vals) != 1:
            raise InvariantViolationError(f"coordinates sum to {sum(vals)}, not 1")
        self.coords = vals
        self.p = len(vals)
        self._support = IndexSet((k + 1 for k, c in enumerate(vals) if c > 0), self.p)

    @property
    def support(self) -> IndexSet:
        return self._support

    @property
    def zero_set(self) -> IndexSet:
        return self._support.complement()

    def __getitem__(self, k: int) -> Fraction:
        """1-based coordinate access."""
        if not 1 <= k <= self.p:
            raise IndexRangeError(f"index {k} outside 1..{self.p}")
        return self.coords[k - 1]

    def __eq__(self, other):
        return isinstance(other, SimplexVector) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "SimplexVector(" + ", ".join(rational_str(c) for c in self.coords) + ")"


def unit_vector(k: int, p: int) -> SimplexVector:
    """The vertex e_k of T (1-based k)."""
    if not 1 <= k <= p:
        raise IndexRangeError(f"index {k} outside 1..{p}")
    return SimplexVector(tuple(1 if i == k - 1 else 0 for i in range(p)))


@dataclass(frozen=True)
class SymMatrix:
    """Immutable symmetric p x p matrix; only the upper triangle is stored."""

    p: int
    upper: tuple  # entries (a, b) with a <= b, row-major: length p(p+1)/2

    def __post_init__(self):
        if self.p < 1:
            raise DimensionMismatchError("order must be >= 1")
        if len(self.upper) != self.p * (self.p + 1) // 2:
            raise DimensionMismatchError("upper triangle has wrong length")

    @staticmethod
    def _tri_index(a: int, b: int, p: int) -> int:
        # a <= b, both 0-based
        return a * p - a * (a - 1) // 2 + (b - a)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SymMatrix":
        p = len(rows)
        mat = [[rational(v) for v in row] for row in rows]
        if any(len(row) != p for row in mat):
            raise DimensionMismatchError("matrix is not square")
        for a in range(p):
            for b in range(a + 1, p):
                if mat[a][b] != mat[b][a]:
                    raise InvariantViolationError(f"asymmetric at ({a + 1},{b + 1})")
        upper = tuple(mat[a][b] for a in range(p) for b in range(a, p))
        return cls(p, upper)

    @classmethod
    def from_upper(cls, p: int, entries: Sequence) -> "SymMatrix":
        return cls(p, tuple(rational(v) for v in entries))

    @classmethod
    def identity(cls, p: int) -> "SymMatrix":
        return cls.from_rows([[1 if a == b else 0 for b in range(p)] for a in range(p)])

    @classmethod
    def zeros(cls, p: int) -> "SymMatrix":
        return cls(p, tuple(Fraction(0) for _ in range(p * (p + 1) // 2)))

    def entry(self, a: int, b: int) -> Fraction:
        """1-based entry access."""
        if not (1 <= a <= self.p and 1 <= b <= self.p):
            raise IndexRangeError(f"entry ({a},{b}) outside order {self.p}")
        i, j = a - 1, b - 1
        if i > j:
            i, j = j, i
        return self.upper[self._tri_index(i, j, self.p)]

    def row(self, k: int) -> tuple:
        return tuple(self.entry(k, b) for b in range(1, self.p + 1))

    def rows(self) -> list[list[Fraction]]:
        return [list(self.row(k)) for k in range(1, self.p + 1)]

    def diag(self) -> tuple:
        return tuple(self.entry(k, k) for k in range(1, self.p + 1))

    def submatrix(self, support: IndexSet) -> list[list[Fraction]]:
        idx = support.indices
        return [[self.entry(a, b) for b in idx] for a in idx]

    def matvec(self, coords: Sequence[Fraction]) -> tuple:
        if len(coords) != self.p:
            raise DimensionMismatchError("vector length != matrix order")
        return tuple(
            sum((self.entry(a, b + 1) * coords[b] for b in range(self.p)), Fraction(0))
            for a in range(1, self.p + 1)
        )

    def add(self, other: "SymMatrix") -> "SymMatrix":
        if other.p != self.p:
            raise DimensionMismatchError("order mismatch")
        return SymMatrix(self.p, tuple(x + y for x, y in zip(self.upper, other.upper)))

    def scale(self, c) -> "SymMatrix":
        c = rational(c)
        return SymMatrix(self.p, tuple(c * x for x in self.upper))

    def inner(self, other: "SymMatrix") -> Fraction:
        """Trace inner product A . B = trace(AB), exact."""
        if other.p != self.p:
            raise DimensionMismatchError("order mismatch")
        total = Fraction(0)
        for a in range(1, self.p + 1):
            for b in range(1, self.p + 1):
                total += self.entry(a, b) * other.entry(a, b)
        return total

    def __repr__(self):
        body = "; ".join(
            " ".join(rational_str(v) for v in self.row(k)) for k in range(1, self.p + 1)
        )
        return f"SymMatrix[{body}]"


def convex_combination(matrices: Sequence[SymMatrix], weights: Sequence[Fraction]) -> SymMatrix:
    if len(matrices) != len(weights) or not matrices:
        raise DimensionMismatchError("weights do not match matrices")
    acc = matrices[0].scale(weights[0])
    for m, w in zip(matrices[1:], weights[1:]):
        acc = acc.add(m.scale(w))
    return acc


def support(t: SimplexVector) -> tuple[IndexSet, IndexSet]:
    """The partition (P_+(t), P_0(t)) of {1,...,p} by strict positivity."""
    return t.support, t.zero_set


def quad_form(D: SymMatrix, t: SimplexVector) -> Fraction:
    """t^T D t, exact."""
    if D.p != t.p:
        raise DimensionMismatchError(f"matrix order {D.p} != vector length {t.p}")
    total = Fraction(0)
    for a in range(D.p):
        ca = t.coords[a]
        if ca == 0:
            continue
        total += ca * ca * D.entry(a + 1, a + 1)
        for b in range(a + 1, D.p):
            cb = t.coords[b]
            if cb != 0:
                total += 2 * ca * cb * D.entry(a + 1, b + 1)
    return total


def matvec_row(D: SymMatrix, t: SimplexVector, k: int) -> Fraction:
    """e_k^T D t, exact (1-based k)."""
    if D.p != t.p:
        raise DimensionMismatchError(f"matrix order {D.p} != vector length {t.p}")
    if not 1 <= k <= D.p:
        raise IndexRangeError(f"row index {k} outside 1..{D.p}")
    return sum((D.entry(k, b + 1) * t.coords[b] for b in range(D.p)), Fraction(0))


def horn_matrix() -> SymMatrix:
    """The classical 5x5 copositive matrix with the alternating sign pattern."""
    first = [1, -1, 1, 1, -1]
    rows = [[first[(b - a) % 5] for b in range(5)] for a in range(5)]
    return SymMatrix.from_rows(rows)
