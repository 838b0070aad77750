"""Hull geometry on the simplex: sigma, l1 distances, the far/near split.

The l1 distance to a convex hull is an exact LP.  For repeated queries a
vector family lazily enumerates the vertices of the dual polyhedron

    P = {(y, s): -1 <= y <= 1,  y . member_j <= s,  s <= 1},

after which rho(t) = max over vertices of (y . t - s); the maximum of the
linear objective (t, -1) over the compact P is attained at a vertex, so the
two evaluation routes agree exactly.  The far region {rho >= sigma} is then
the union of the finitely many halfspace slices {y . t >= s + sigma}.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .core import (
    CopfacesError,
    DimensionMismatchError,
    GridSizeError,
    IndexSet,
    SimplexVector,
    rational,
)
from .linalg import solve_affine
from .lp import EQ, GE, LE, LinearProgram, LPResult, linear_program, solve_lp  # noqa: F401

GRID_CAP = 2_000_000
_VERTEX_ENUM_CAP = 200_000


class WitnessError(CopfacesError):
    """No support-cover witness exists; the near-region precondition was violated."""


class VectorFamily:
    """A nonempty finite family V of simplex vectors with cached geometry.

    ``sigma_mode`` selects the threshold used by the far/near split: "all"
    takes the minimum positive coordinate over every member, "vertices"
    restricts to members that are vertices of conv V (a legal, possibly
    larger threshold).
    """

    def __init__(self, members: Sequence[SimplexVector], sigma_mode: str = "all"):
        members = tuple(members)
        if not members:
            raise DimensionMismatchError("a vector family must be nonempty")
        p = members[0].p
        if any(t.p != p for t in members):
            raise DimensionMismatchError("family members have mixed lengths")
        if sigma_mode not in ("all", "vertices"):
            raise DimensionMismatchError(f"unknown sigma mode {sigma_mode!r}")
        self.members = members
        self.p = p
        self.sigma_mode = sigma_mode
        self._sigma: Optional[Fraction] = None
        self._dual_vertices = None

    @property
    def sigma(self) -> Fraction:
        if self._sigma is None:
            if self.sigma_mode == "all":
                pool = self.members
            else:
                pool = [t for t in self.members if self.is_vertex(t)]
            self._sigma = min(
                c for t in pool for c in t.coords if c > 0
            )
        return self._sigma

    def is_vertex(self, t: SimplexVector) -> bool:
        others = [m for m in self.members if m != t]
        if not others:
            return True
        return l1_distance_to_hull(t, VectorFamily(others)) > 0

    def rho(self, t: SimplexVector) -> Fraction:
        """l1 distance from t to conv V, exact."""
        vertices = self._vertices()
        if vertices is not None:
            return max(
                sum(a * b for a, b in zip(y, t.coords)) - s for y, s in vertices
            )
        return l1_distance_to_hull(t, self)

    def _vertices(self):
        if self._dual_vertices is None:
            m = 2 * self.p + len(self.members) + 1
            if math.comb(m, self.p + 1) > _VERTEX_ENUM_CAP:
                return None
            self._dual_vertices = _dual_polyhedron_vertices(self)
        return self._dual_vertices

    def omega_slices(self):
        """Halfspaces (y, c) whose union over T is exactly {rho >= sigma}."""
        vertices = self._vertices()
        if vertices is None:
            raise GridSizeError("dual vertex enumeration exceeds the configured cap")
        sig = self.sigma
        return [(y, s + sig) for y, s in vertices]

    def __repr__(self):
        return f"VectorFamily({list(self.members)!r})"


def sigma(V: VectorFamily) -> Fraction:
    """Minimum positive coordinate over the family members."""
    return V.sigma


def l1_distance_to_hull(t: SimplexVector, V: VectorFamily) -> Fraction:
    """min over conv V of the l1 distance to t, via the exact LP.

    Variables are u, v >= 0 (positive/negative parts of t - sum alpha_i t(i))
    and hull weights alpha >= 0 summing to one.
    """
    if t.p != V.p:
        raise DimensionMismatchError("point and family dimensions differ")
    p, m = t.p, len(V.members)
    nvars = 2 * p + m
    objective = [Fraction(1)] * (2 * p) + [Fraction(0)] * m
    rows = []
    for k in range(p):
        coeffs = [Fraction(0)] * nvars
        coeffs[k] = Fraction(1)
        coeffs[p + k] = Fraction(-1)
        for i, member in enumerate(V.members):
            coeffs[2 * p + i] = member.coords[k]
        rows.append((coeffs, EQ, t.coords[k]))
    coeffs = [Fraction(0)] * (2 * p) + [Fraction(1)] * m
    rows.append((coeffs, EQ, Fraction(1)))
    res = solve_lp(linear_program(objective, rows))
    if res.status != "optimal":
        raise AssertionError("hull-distance LP is always feasible and bounded")
    return res.value


def in_omega(t: SimplexVector, V: VectorFamily) -> bool:
    """t lies in the far region: rho(t, conv V) >= sigma(V)."""
    return V.rho(t) >= V.sigma


def in_n(t: SimplexVector, V: VectorFamily) -> bool:
    """t lies in the near region: rho(t, conv V) <= sigma(V)."""
    return V.rho(t) <= V.sigma


def support_cover_witness(t: SimplexVector, V: VectorFamily) -> int:
    """Smallest 1-based i with P_0(t) contained in P_0(t(i)).

    Guaranteed to exist whenever t is in the near region; raises WitnessError
    otherwise (violated precondition or an implementation bug).
    """
    zero = set(t.zero_set.indices)
    for i, member in enumerate(V.members, start=1):
        if zero <= set(member.zero_set.indices):
            return i
    raise WitnessError(f"no member's zero pattern covers P_0 = {sorted(zero)}")


def compositions(total: int, parts: int):
    """All nonnegative integer tuples of the given length summing to total, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def simplex_grid(p: int, denominator: int, cap: int = GRID_CAP):
    """All points of T with coordinates that are multiples of 1/denominator."""
    if denominator < 1:
        raise GridSizeError("denominator must be >= 1")
    size = math.comb(denominator + p - 1, p - 1)
    if size > cap:
        raise GridSizeError(f"grid of {size} points exceeds cap {cap}")
    den = Fraction(denominator)
    return [
        SimplexVector(tuple(Fraction(c) / den for c in combo))
        for combo in compositions(denominator, p)
    ]


def omega_grid(V: VectorFamily, denominator: int, cap: int = GRID_CAP):
    """Grid points of T in the far region of V, in deterministic (lex) order."""
    return [t for t in simplex_grid(V.p, denominator, cap) if in_omega(t, V)]


def _dual_polyhedron_vertices(V: VectorFamily):
    """Vertices of {(y, s): -1 <= y <= 1, y . t(j) <= s, s <= 1}, exact."""
    p = V.p
    d = p + 1
    rows = []
    rhs = []
    for k in range(p):
        row = [Fraction(0)] * d
        row[k] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
        row = [Fraction(0)] * d
        row[k] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(1))
    for member in V.members:
        rows.append(list(member.coords) + [Fraction(-1)])
        rhs.append(Fraction(0))
    row = [Fraction(0)] * d
    row[d - 1] = Fraction(1)
    rows.append(row)
    rhs.append(Fraction(1))

    vertices = set()
    for subset in combinations(range(len(rows)), d):
        sub = [rows[i] for i in subset]
        sub_rhs = [rhs[i] for i in subset]
        solved = solve_affine(sub, sub_rhs)
        if solved is None or solved[1]:
            continue
        z = solved[0]
        if all(
            sum(a * b for a, b in zip(row, z)) <= bound
            for row, bound in zip(rows, rhs)
        ):
            vertices.add((tuple(z[:p]), z[p]))
    return sorted(vertices)


def convex_hull_membership(t: SimplexVector, V: VectorFamily) -> bool:
    """Exact feasibility check: is t a convex combination of the family?"""
    return l1_distance_to_hull(t, V) == 0


def hull_coefficients(t: SimplexVector, V: VectorFamily):
    """Convex weights expressing t over the family, preferring few members.

    Subsets are tried by increasing size (then lex), so the returned support
    is deterministic.  Returns None when t is outside conv V.
    """
    if t.p != V.p:
        raise DimensionMismatchError("point and family dimensions differ")
    m = len(V.members)
    for size in range(1, m + 1):
        for subset in combinations(range(m), size):
            rows = []
            rhs = []
            for k in range(t.p):
                rows.append([V.members[i].coords[k] for i in subset])
                rhs.append(t.coords[k])
            rows.append([Fraction(1)] * size)
            rhs.append(Fraction(1))
            solved = solve_affine(rows, rhs)
            if solved is None:
                continue
            x0, kernel = solved
            if not kernel:
                if all(v >= 0 for v in x0):
                    coeffs = [Fraction(0)] * m
                    for i, v in zip(subset, x0):
                        coeffs[i] = v
                    return tuple(coeffs)
                continue
            # pick a nonnegative point of the affine set when one exists
            res = _nonnegative_point(x0, kernel)
            if res is not None:
                coeffs = [Fraction(0)] * m
                for i, v in zip(subset, res):
                    coeffs[i] = v
                return tuple(coeffs)
    return None


def _nonnegative_point(x0, kernel):
    d = len(kernel)
    rows = []
    for k in range(len(x0)):
        coeffs = [kernel[i][k] for i in range(d)]
        rows.append((coeffs, GE, -x0[k]))
    res = solve_lp(linear_program([Fraction(0)] * d, rows, [(None, None)] * d))
    if res.status != "optimal":
        return None
    point = list(x0)
    for i in range(d):
        if res.x[i] != 0:
            point = [a + res.x[i] * b for a, b in zip(point, kernel[i])]
    return point
