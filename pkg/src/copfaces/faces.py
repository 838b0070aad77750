"""Faces of the copositive cone: construction, canonical zero data, membership
in the three equivalent representations, minimally active elements, and
minimal faces of matrix sets.

A face is specified in raw form by simplex vectors t(i) and row masks L(i)
with P_+(t(i)) <= L(i):

    K = {D copositive : e_k^T D t(i) = 0 for all k in L(i), all i}.

``canonicalize_face`` computes the face's minimal zeros and M-sets exactly by
sandwiching: a generic member (support-maximal combination of PSD rank-one
and nonnegative atoms satisfying the mask equalities) bounds the zero data
from above, while a closure of provably forced linear functionals bounds it
from below.  When the two meet, the data is certified exact; otherwise it is
returned flagged as heuristic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from . import lp
from .core import (
    DEFAULT_MAX_P,
    CertificationError,
    IndexSet,
    InvariantViolationError,
    SimplexVector,
    SymMatrix,
    convex_combination,
    matvec_row,
    quad_form,
)
from .geometry import VectorFamily, hull_coefficients, omega_grid
from .linalg import RationalSpan
from .oracle import (
    SupportPiece,
    common_zero_pieces,
    is_copositive,
    min_quad_over_simplex,
    min_quad_with_cut,
    minimal_zero_vectors,
)
from .zeros import MatrixSet, catalog


@dataclass(frozen=True)
class FaceSpec:
    """Raw face data: vectors t(i) with masks P_+(t(i)) <= L(i) <= P."""

    p: int
    vectors: tuple
    masks: tuple

    @classmethod
    def of(cls, p: int, vectors: Sequence[SimplexVector], masks: Sequence[IndexSet]) -> "FaceSpec":
        vectors = tuple(vectors)
        masks = tuple(masks)
        if len(vectors) != len(masks):
            raise InvariantViolationError("one mask per vector is required")
        for t, L in zip(vectors, masks):
            if t.p != p or L.p != p:
                raise InvariantViolationError("vector/mask order mismatch")
            if not t.support.issubset(L):
                raise InvariantViolationError(
                    f"mask {L!r} does not contain the support of {t!r}"
                )
        return cls(p, vectors, masks)

    def family(self) -> Optional[VectorFamily]:
        return VectorFamily(self.vectors) if self.vectors else None


@dataclass(frozen=True)
class FaceData:
    """Canonical face data: minimal zeros, their M-sets, sigma, provenance."""

    p: int
    minimal_zeros: tuple
    m_sets: tuple
    sigma: Optional[Fraction]
    source: object = field(compare=False, default=None)
    exact: bool = True

    def family(self) -> Optional[VectorFamily]:
        return VectorFamily(self.minimal_zeros) if self.minimal_zeros else None

    def to_spec(self) -> FaceSpec:
        """Rebuild a raw face description with V = zeros and L = M-sets."""
        return FaceSpec.of(self.p, self.minimal_zeros, self.m_sets)


def is_exposed(F: FaceSpec) -> bool:
    """True when every mask equals the support of its vector."""
    return all(t.support == L for t, L in zip(F.vectors, F.masks))


def face_membership(D: SymMatrix, F: FaceSpec, max_p: int = DEFAULT_MAX_P) -> bool:
    """Membership through the defining equalities plus exact copositivity."""
    for t, L in zip(F.vectors, F.masks):
        for k in L:
            if matvec_row(D, t, k) != 0:
                return False
    return is_copositive(D, max_p)


def membership_khat(D: SymMatrix, fd: FaceData, max_p: int = DEFAULT_MAX_P) -> bool:
    """Membership via full-simplex nonnegativity plus M-set row conditions."""
    if not _row_conditions_hold(D, fd):
        return False
    return is_copositive(D, max_p)


def membership_kbar(D: SymMatrix, fd: FaceData, max_p: int = DEFAULT_MAX_P) -> bool:
    """Membership via far-region nonnegativity plus M-set row conditions.

    The quadratic condition only quantifies over the far region of the zero
    family; it is decided exactly by minimizing over each halfspace slice of
    that region.
    """
    if not _row_conditions_hold(D, fd):
        return False
    if not fd.minimal_zeros:
        return is_copositive(D, max_p)
    if is_copositive(D, max_p):
        return True
    family = fd.family()
    for y, c in family.omega_slices():
        hit = min_quad_with_cut(D, y, c, max_p)
        if hit is not None and hit[0] < 0:
            return False
    return True


def _row_conditions_hold(D: SymMatrix, fd: FaceData) -> bool:
    for tau, M in zip(fd.minimal_zeros, fd.m_sets):
        for k in range(1, fd.p + 1):
            v = matvec_row(D, tau, k)
            if k in M:
                if v != 0:
                    return False
            elif v < 0:
                return False
    return True


# -- Theorem-1 style copositivity verdicts ---------------------------------

CERTIFIED = "certified"
CONSISTENT = "consistent"
REFUTED = "refuted"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class CopositivityVerdict:
    status: str
    reason: str
    witness: Optional[SimplexVector] = None


def copositivity_via_zeros(
    D: SymMatrix,
    V: VectorFamily,
    grid_denominator: int,
    escalate: bool = True,
    max_p: int = DEFAULT_MAX_P,
) -> CopositivityVerdict:
    """Check the far-region/member-ray copositivity criterion against D.

    Exact violations refute.  Certification happens only through the exact
    oracle or through the detectable empty-far-region case (conv V covers the
    whole simplex); grid successes alone report "consistent".
    """
    rows_ok = True
    for i, t in enumerate(V.members, start=1):
        value = quad_form(D, t)
        if value < 0:
            return CopositivityVerdict(REFUTED, f"member {i} has negative value", t)
        row = [matvec_row(D, t, k) for k in range(1, D.p + 1)]
        if any(v < 0 for v in row):
            if value == 0:
                # a zero of a copositive matrix annihilates no row negatively
                return CopositivityVerdict(REFUTED, f"negative row at zero member {i}", t)
            rows_ok = False
    for t in omega_grid(V, grid_denominator):
        if quad_form(D, t) < 0:
            return CopositivityVerdict(REFUTED, "negative value at far-region grid point", t)
    if rows_ok and _hull_covers_simplex(V):
        return CopositivityVerdict(CERTIFIED, "member hull covers the simplex; rays suffice")
    if not escalate:
        if rows_ok:
            return CopositivityVerdict(CONSISTENT, "sampled criterion conditions hold")
        return CopositivityVerdict(UNRESOLVED, "member ray condition fails; no exact violation found")
    res = min_quad_over_simplex(D, max_p)
    if res.min_value >= 0:
        return CopositivityVerdict(CERTIFIED, "exact oracle confirms nonnegativity")
    witness = res.minimizers[0] if res.minimizers else None
    return CopositivityVerdict(REFUTED, "exact oracle found a negative value", witness)


def _hull_covers_simplex(V: VectorFamily) -> bool:
    from .core import unit_vector
    from .geometry import convex_hull_membership

    return all(convex_hull_membership(unit_vector(k, V.p), V) for k in range(1, V.p + 1))


# -- minimally active elements ----------------------------------------------


@dataclass(frozen=True)
class MinimallyActiveResult:
    element: SymMatrix
    tilde_part: SymMatrix
    averaged_part: SymMatrix
    cross_witnesses: dict = field(compare=False, default_factory=dict)
    row_witnesses: dict = field(compare=False, default_factory=dict)


def minimally_active_element(Q: MatrixSet, max_p: int = DEFAULT_MAX_P) -> MinimallyActiveResult:
    """A member of Q whose zero data is minimal over the whole set.

    Built as the half/half mix of the uniform generator average (positive
    off the common zero set) and a uniform positive combination of witness
    generators for every strict cross pair and every row off the M-sets.
    """
    cat = catalog(Q, max_p)
    avg = Q.average()
    if not cat.minimal_zeros:
        for G in Q.generators:
            if not common_zero_pieces([G], max_p):
                return MinimallyActiveResult(G, G, G)
        return MinimallyActiveResult(avg, avg, avg)

    Z = cat.minimal_zeros
    cross = {}
    for i, tau_i in enumerate(Z, start=1):
        for j, tau_j in enumerate(Z, start=1):
            if i == j:
                continue
            for g, G in enumerate(Q.generators):
                if _pairing(G, tau_i, tau_j) > 0:
                    cross[(i, j)] = g
                    break
    rows = {}
    for j, (tau, M) in enumerate(zip(Z, cat.m_sets), start=1):
        for k in range(1, Q.p + 1):
            if k in M:
                continue
            g = next(
                (g for g, G in enumerate(Q.generators) if matvec_row(G, tau, k) > 0),
                None,
            )
            if g is None:
                raise InvariantViolationError(
                    f"no generator witnesses row {k} off M({j}); inconsistent input"
                )
            rows[(k, j)] = g
    terms = [Q.generators[g] for g in cross.values()] + [Q.generators[g] for g in rows.values()]
    if terms:
        w = Fraction(1, len(terms))
        tilde = convex_combination(terms, [w] * len(terms))
    else:
        tilde = avg
    element = convex_combination([tilde, avg], [Fraction(1, 2), Fraction(1, 2)])
    return MinimallyActiveResult(element, tilde, avg, cross, rows)


def _pairing(G: SymMatrix, a: SimplexVector, b: SimplexVector) -> Fraction:
    return sum(
        (a.coords[k - 1] * matvec_row(G, b, k) for k in a.support), Fraction(0)
    )


# -- minimal faces ------------------------------------------------------------


def minimal_face(Q: MatrixSet, max_p: int = DEFAULT_MAX_P) -> FaceData:
    """The smallest face of the copositive cone containing the matrix set."""
    cat = catalog(Q, max_p)
    sig = VectorFamily(cat.minimal_zeros).sigma if cat.minimal_zeros else None
    return FaceData(Q.p, cat.minimal_zeros, cat.m_sets, sig, source=Q, exact=True)


def face_of_matrix(A: SymMatrix, max_p: int = DEFAULT_MAX_P) -> FaceData:
    """Minimal face containing a single copositive matrix."""
    return minimal_face(MatrixSet.of([A], max_p), max_p)


# -- canonicalization of raw faces -------------------------------------------


def _sym_unit(p: int, a: int, b: int) -> SymMatrix:
    entries = [Fraction(0)] * (p * (p + 1) // 2)
    m = SymMatrix(p, tuple(entries))
    rows = [[Fraction(0)] * p for _ in range(p)]
    rows[a - 1][b - 1] = Fraction(1)
    rows[b - 1][a - 1] = Fraction(1)
    return SymMatrix.from_rows(rows)


def _rank_one(x: Sequence[Fraction], p: int) -> SymMatrix:
    rows = [[x[a] * x[b] for b in range(p)] for a in range(p)]
    return SymMatrix.from_rows(rows)


def _atom_pool(p: int, level: int):
    """Copositive atoms: symmetric nonnegative units plus PSD rank-ones.

    Level 1 is a fixed structured pool; higher levels append seeded random
    rational vectors so retries stay deterministic.
    """
    atoms = []
    for a in range(1, p + 1):
        for b in range(a, p + 1):
            atoms.append(_sym_unit(p, a, b))
    vectors = []
    for a in range(p):
        v = [Fraction(0)] * p
        v[a] = Fraction(1)
        vectors.append(tuple(v))
    for a in range(p):
        for b in range(a + 1, p):
            for sb in (Fraction(1), Fraction(-1)):
                v = [Fraction(0)] * p
                v[a] = Fraction(1)
                v[b] = sb
                vectors.append(tuple(v))
    vectors.append(tuple(Fraction(1) for _ in range(p)))
    for a in range(p):
        v = [Fraction(1)] * p
        v[a] = Fraction(1 - p)
        vectors.append(tuple(v))
    if level > 1:
        rng = random.Random(20_000 + level)
        for _ in range(24 * (level - 1)):
            v = tuple(
                Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(p)
            )
            if any(v):
                vectors.append(v)
    seen = set()
    for v in vectors:
        key = v if next(c for c in v if c != 0) > 0 else tuple(-c for c in v)
        if key in seen:
            continue
        seen.add(key)
        atoms.append(_rank_one(v, p))
    return atoms


def _mask_functionals(F: FaceSpec):
    """The symmetric functionals sym(e_k t(i)^T) for k in L(i)."""
    out = []
    for t, L in zip(F.vectors, F.masks):
        for k in L:
            out.append(_sym_outer_vec(_unit_coords(k, F.p), t.coords, F.p))
    return out


def _unit_coords(k: int, p: int):
    v = [Fraction(0)] * p
    v[k - 1] = Fraction(1)
    return tuple(v)


def _sym_outer_vec(u, v, p: int):
    """Upper-triangle coordinates of sym(u v^T) = (u v^T + v u^T) / 2."""
    out = []
    for a in range(p):
        for b in range(a, p):
            out.append((u[a] * v[b] + u[b] * v[a]) / 2)
    return tuple(out)


def _matrix_vec(M: SymMatrix):
    return tuple(M.upper)


def _apply_functionals(functionals, atom: SymMatrix):
    """Evaluate e_k^T A t functionals on an atom via the doubled inner product."""
    vec = _matrix_vec(atom)
    values = []
    p = atom.p
    for f in functionals:
        total = Fraction(0)
        idx = 0
        for a in range(p):
            for b in range(a, p):
                coeff = f[idx] if a == b else 2 * f[idx]
                if coeff != 0 and vec[idx] != 0:
                    total += coeff * vec[idx]
                idx += 1
        values.append(total)
    return values


class AtomCone:
    """The cone of atom combinations lying in a raw face; exact throughout."""

    def __init__(self, F: FaceSpec, level: int = 1):
        self.spec = F
        self.p = F.p
        self.atoms = _atom_pool(F.p, level)
        self.functionals = _mask_functionals(F)
        self._eval = [_apply_functionals(self.functionals, A) for A in self.atoms]
        self.singleton = [all(v == 0 for v in vals) for vals in self._eval]
        self._participating: Optional[list] = None

    def generic_element(self, thorough: bool = False) -> SymMatrix:
        """A support-maximal member: the sum of every participating atom combo."""
        total = SymMatrix.zeros(self.p)
        for A, ok in zip(self.atoms, self.singleton):
            if ok:
                total = total.add(A)
        if thorough:
            for combo in self._mixed_combinations():
                total = total.add(combo)
        return total

    def _mixed_combinations(self):
        """Feasible combinations that activate atoms infeasible on their own."""
        n = len(self.atoms)
        rows = []
        for fi in range(len(self.functionals)):
            rows.append((tuple(self._eval[a][fi] for a in range(n)), lp.EQ, Fraction(0)))
        out = []
        for a in range(n):
            if self.singleton[a]:
                continue
            pin = tuple(Fraction(1) if i == a else Fraction(0) for i in range(n))
            res = lp.solve_lp(lp.linear_program([Fraction(0)] * n, list(rows) + [(pin, lp.EQ, Fraction(1))]))
            if res.status == lp.OPTIMAL:
                combo = SymMatrix.zeros(self.p)
                for i, w in enumerate(res.x):
                    if w != 0:
                        combo = combo.add(self.atoms[i].scale(w))
                out.append(combo)
        return out

    def sample_member(self, rng: random.Random, mixes: int = 3) -> SymMatrix:
        """A random member of the face: positive rational mix of feasible atoms."""
        feas = [A for A, ok in zip(self.atoms, self.singleton) if ok]
        total = SymMatrix.zeros(self.p)
        if not feas:
            return total
        for _ in range(mixes):
            A = feas[rng.randrange(len(feas))]
            total = total.add(A.scale(Fraction(rng.randint(1, 8), rng.randint(1, 4))))
        return total


def canonicalize_face(
    F: FaceSpec,
    max_p: int = DEFAULT_MAX_P,
    max_level: int = 3,
) -> FaceData:
    """Exact zero data (minimal zeros, M-sets, sigma) of a raw face.

    Certification sandwich: every piece of the generic element's zero set must
    be provably forced by the mask equalities (closure under taking rows at
    certified zeros), and the forced M-sets must match the generic element's.
    Success yields exact data; exhausted retries yield heuristically flagged
    data from the last generic element.
    """
    if not F.vectors:
        return FaceData(F.p, (), (), None, source=F, exact=True)
    last = None
    for level in range(1, max_level + 1):
        cone = AtomCone(F, level)
        generic = cone.generic_element(thorough=level > 1)
        data, certified = _certify_zero_data(F, generic, max_p)
        if certified:
            _check_mask_inclusion(F, data)
            return data
        last = data
    return last


def _certify_zero_data(F: FaceSpec, generic: SymMatrix, max_p: int):
    p = F.p
    pieces = common_zero_pieces([generic], max_p)
    span = RationalSpan(p * (p + 1) // 2)
    for f in _mask_functionals(F):
        span.add(f)

    embedded = []
    for piece in pieces:
        point = piece.point.coords
        kern = [_embed_kernel(v, piece.support, p) for v in piece.kernel]
        embedded.append((piece, point, kern))

    certified = [False] * len(pieces)
    changed = True
    while changed:
        changed = False
        for idx, (piece, point, kern) in enumerate(embedded):
            if certified[idx]:
                continue
            if not _piece_quadratics_in_span(span, point, kern, p):
                continue
            certified[idx] = True
            changed = True
            for k in piece.support:
                unit = _unit_coords(k, p)
                span.add(_sym_outer_vec(unit, point, p))
                for v in kern:
                    span.add(_sym_outer_vec(unit, v, p))

    zeros = minimal_zero_vectors(pieces)
    m_generic = []
    m_forced = []
    for tau in zeros:
        m_generic.append(
            IndexSet(
                (k for k in range(1, p + 1) if matvec_row(generic, tau, k) == 0), p
            )
        )
        m_forced.append(
            IndexSet(
                (
                    k
                    for k in range(1, p + 1)
                    if span.contains(_sym_outer_vec(_unit_coords(k, p), tau.coords, p))
                ),
                p,
            )
        )
    exact = all(certified) and m_generic == m_forced
    sig = VectorFamily(zeros).sigma if zeros else None
    data = FaceData(p, tuple(zeros), tuple(m_generic), sig, source=F, exact=exact)
    return data, exact


def _embed_kernel(v, support: IndexSet, p: int):
    out = [Fraction(0)] * p
    for k, val in zip(support, v):
        out[k - 1] = val
    return tuple(out)


def _piece_quadratics_in_span(span: RationalSpan, point, kern, p: int) -> bool:
    vecs = [tuple(point)] + [tuple(v) for v in kern]
    for a, b in combinations_with_replacement(range(len(vecs)), 2):
        if not span.contains(_sym_outer_vec(vecs[a], vecs[b], p)):
            return False
    return True


def _check_mask_inclusion(F: FaceSpec, data: FaceData) -> None:
    """Masks must embed into the M-sets of the zeros carrying each vector."""
    if not data.minimal_zeros:
        raise CertificationError("raw-face vectors vanished from the zero data")
    family = VectorFamily(data.minimal_zeros)
    for t, L in zip(F.vectors, F.masks):
        coeffs = hull_coefficients(t, family)
        if coeffs is None:
            raise CertificationError(f"{t!r} is not in the hull of the minimal zeros")
        for j, c in enumerate(coeffs):
            if c > 0 and not L.issubset(data.m_sets[j]):
                raise CertificationError(
                    f"mask {L!r} escapes M({j + 1}) = {data.m_sets[j]!r}"
                )
