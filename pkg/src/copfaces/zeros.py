"""Zeros, minimal zeros, M-sets and the Slater test for finitely generated
convex subsets of the copositive cone.

A matrix set is the convex hull of finitely many copositive generators.  Its
zero set equals the intersection of the generators' zero sets, because the
form t^T D t is a nonnegative convex combination of the generator values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    DEFAULT_MAX_P,
    DimensionMismatchError,
    IndexSet,
    InvariantViolationError,
    NotCopositiveError,
    SimplexVector,
    SymMatrix,
    convex_combination,
    matvec_row,
    quad_form,
)
from .oracle import (
    common_zero_pieces,
    copositivity_witness,
    minimal_zero_vectors,
)

from fractions import Fraction


@dataclass(frozen=True)
class MatrixSet:
    """Convex hull of finitely many copositive generators of equal order."""

    generators: tuple
    p: int

    @classmethod
    def of(cls, generators: Sequence[SymMatrix], max_p: int = DEFAULT_MAX_P) -> "MatrixSet":
        generators = tuple(generators)
        if not generators:
            raise DimensionMismatchError("a matrix set needs at least one generator")
        p = generators[0].p
        if any(G.p != p for G in generators):
            raise DimensionMismatchError("generators have mixed orders")
        for i, G in enumerate(generators):
            witness = copositivity_witness(G, max_p)
            if witness is not None:
                raise NotCopositiveError(f"generator {i + 1} is not copositive", witness)
        return cls(generators, p)

    def average(self) -> SymMatrix:
        w = Fraction(1, len(self.generators))
        return convex_combination(self.generators, [w] * len(self.generators))


@dataclass(frozen=True)
class ZeroCatalog:
    pieces: tuple
    minimal_zeros: tuple
    m_sets: tuple


def zero_set(Q: MatrixSet, max_p: int = DEFAULT_MAX_P):
    """The common zero set as support-indexed pieces (possibly empty)."""
    return common_zero_pieces(Q.generators, max_p)


def minimal_zeros(Q: MatrixSet, max_p: int = DEFAULT_MAX_P):
    """Vertices of the convex hull of the zero set, in canonical order."""
    return minimal_zero_vectors(zero_set(Q, max_p))


def m_sets(Q: MatrixSet, Z: Sequence[SimplexVector]):
    """M(j) = rows annihilated at zero j by every generator (hence by all of Q)."""
    out = []
    for tau in Z:
        if any(quad_form(G, tau) != 0 for G in Q.generators):
            raise InvariantViolationError(f"{tau!r} is not a zero of the matrix set")
        rows = [
            k
            for k in range(1, Q.p + 1)
            if all(matvec_row(G, tau, k) == 0 for G in Q.generators)
        ]
        out.append(IndexSet(rows, Q.p))
    return out


def slater_holds(Q: MatrixSet, max_p: int = DEFAULT_MAX_P) -> bool:
    """True iff the zero set is empty (some member is strictly copositive).

    Cross-checked against the uniform generator average, whose zero set
    coincides with the common zero set.
    """
    empty = not zero_set(Q, max_p)
    avg_empty = copositivity_witness(Q.average(), max_p) is None and not common_zero_pieces(
        [Q.average()], max_p
    )
    if empty != avg_empty:
        raise AssertionError("zero-set and average-generator Slater tests disagree")
    return empty


def catalog(Q: MatrixSet, max_p: int = DEFAULT_MAX_P) -> ZeroCatalog:
    pieces = zero_set(Q, max_p)
    Z = minimal_zero_vectors(pieces)
    return ZeroCatalog(tuple(pieces), tuple(Z), tuple(m_sets(Q, Z)))
