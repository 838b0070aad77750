"""Dual cones of faces: generator families, assembly, validation, and the
constructive promotion from the mask-anchored family to the zero-anchored one.

Three families describe the dual of a face K(V, L):

  * flavor "G":       rank-ones over the simplex plus cross terms anchored at
                      the t(i), with lambda supported inside L(i);
  * flavor "G-tilde": same anchors, lambda merely nonnegative off L(i);
  * flavor "G-bar":   rank-ones restricted to the far region of the face's
                      minimal zeros plus cross terms anchored at the zeros,
                      lambda nonnegative off the M-sets.

The promotion re-anchors cross terms over the minimal zeros and eliminates
every rank-one whose direction is too close to the zero hull, either by
absorbing it into cross terms (distance zero) or by splitting it along a
segment from the hull to the far region (intermediate distance).  The
assembled matrix is preserved bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import lp
from .core import (
    DEFAULT_MAX_P,
    CertificationError,
    IndexSet,
    InvariantViolationError,
    SimplexVector,
    SymMatrix,
)
from .faces import (
    FaceData,
    FaceSpec,
    canonicalize_face,
    face_membership,
    membership_khat,
)
from .geometry import VectorFamily, hull_coefficients, in_omega

G = "G"
G_TILDE = "G-tilde"
G_BAR = "G-bar"


def rank_one_cap(p: int) -> int:
    return p * (p + 1) // 2


@dataclass(frozen=True)
class DualDecomposition:
    """An element of a dual-cone family as explicit generator data."""

    flavor: str
    rank_one_terms: tuple  # (alpha >= 0, mu: SimplexVector)
    cross_terms: tuple  # (anchor: SimplexVector, lam: tuple of Fraction)
    face_context: object  # FaceSpec for G / G-tilde, FaceData for G-bar

    @property
    def p(self) -> int:
        if isinstance(self.face_context, (FaceSpec, FaceData)):
            return self.face_context.p
        raise InvariantViolationError("face context must be a FaceSpec or FaceData")


def validate(dd: DualDecomposition) -> None:
    """Check the flavor-specific invariants; raises on violation."""
    p = dd.p
    if len(dd.rank_one_terms) > rank_one_cap(p):
        raise InvariantViolationError(
            f"{len(dd.rank_one_terms)} rank-one terms exceed the cap {rank_one_cap(p)}"
        )
    for alpha, mu in dd.rank_one_terms:
        if alpha < 0:
            raise InvariantViolationError("rank-one weights must be nonnegative")
        if mu.p != p:
            raise InvariantViolationError("rank-one vector order mismatch")
    for anchor, lam in dd.cross_terms:
        if anchor.p != p or len(lam) != p:
            raise InvariantViolationError("cross-term order mismatch")

    if dd.flavor in (G, G_TILDE):
        spec = dd.face_context
        if not isinstance(spec, FaceSpec):
            raise InvariantViolationError("mask-anchored flavors need a FaceSpec context")
        seen = set()
        for anchor, lam in dd.cross_terms:
            try:
                i = spec.vectors.index(anchor)
            except ValueError:
                raise InvariantViolationError(f"anchor {anchor!r} is not a face vector")
            if i in seen:
                raise InvariantViolationError("duplicate anchor in cross terms")
            seen.add(i)
            mask = spec.masks[i]
            for k in range(1, p + 1):
                if k in mask:
                    continue
                if dd.flavor == G and lam[k - 1] != 0:
                    raise InvariantViolationError(
                        f"flavor G requires lambda_{k} = 0 off the mask"
                    )
                if lam[k - 1] < 0:
                    raise InvariantViolationError(
                        f"lambda_{k} must be nonnegative off the mask"
                    )
    elif dd.flavor == G_BAR:
        data = dd.face_context
        if not isinstance(data, FaceData):
            raise InvariantViolationError("flavor G-bar needs canonical FaceData context")
        if not data.minimal_zeros:
            if dd.cross_terms:
                raise InvariantViolationError(
                    "a face without zeros admits no cross terms"
                )
            return
        family = data.family()
        seen = set()
        for anchor, lam in dd.cross_terms:
            try:
                j = data.minimal_zeros.index(anchor)
            except ValueError:
                raise InvariantViolationError(f"anchor {anchor!r} is not a minimal zero")
            if j in seen:
                raise InvariantViolationError("duplicate anchor in cross terms")
            seen.add(j)
            for k in range(1, p + 1):
                if k not in data.m_sets[j] and lam[k - 1] < 0:
                    raise InvariantViolationError(
                        f"lambda_{k} must be nonnegative off M({j + 1})"
                    )
        for alpha, mu in dd.rank_one_terms:
            if alpha > 0 and not in_omega(mu, family):
                raise InvariantViolationError(
                    f"rank-one direction {mu!r} lies inside the near region"
                )
    else:
        raise InvariantViolationError(f"unknown flavor {dd.flavor!r}")


def assemble(dd: DualDecomposition) -> SymMatrix:
    """The symmetric matrix the decomposition denotes; validates first."""
    validate(dd)
    p = dd.p
    total = SymMatrix.zeros(p)
    for alpha, mu in dd.rank_one_terms:
        if alpha == 0:
            continue
        rows = [[alpha * mu.coords[a] * mu.coords[b] for b in range(p)] for a in range(p)]
        total = total.add(SymMatrix.from_rows(rows))
    for anchor, lam in dd.cross_terms:
        rows = [
            [
                lam[a] * anchor.coords[b] + anchor.coords[a] * lam[b]
                for b in range(p)
            ]
            for a in range(p)
        ]
        total = total.add(SymMatrix.from_rows(rows))
    return total


def verify_duality(D: SymMatrix, dd: DualDecomposition, max_p: int = DEFAULT_MAX_P) -> bool:
    """Exact sign check D . assemble(dd) >= 0 for a face member D."""
    context = dd.face_context
    if isinstance(context, FaceSpec):
        if not face_membership(D, context, max_p):
            raise InvariantViolationError("D is not a member of the face context")
    else:
        if not membership_khat(D, context, max_p):
            raise InvariantViolationError("D is not a member of the face context")
    return D.inner(assemble(dd)) >= 0


def promote_tilde_to_bar(
    dd: DualDecomposition,
    face_data: Optional[FaceData] = None,
    max_p: int = DEFAULT_MAX_P,
) -> DualDecomposition:
    """Rewrite a mask-anchored decomposition over the face's minimal zeros.

    The assembled matrix is preserved exactly.  Raises CertificationError when
    the face context cannot be canonicalized exactly.
    """
    if dd.flavor not in (G, G_TILDE):
        raise InvariantViolationError("promotion expects a mask-anchored decomposition")
    validate(dd)
    spec = dd.face_context
    if face_data is None:
        face_data = canonicalize_face(spec, max_p)
    if not face_data.exact:
        raise CertificationError("face context was not canonicalized exactly")

    p = dd.p
    if not face_data.minimal_zeros:
        if dd.cross_terms:
            raise CertificationError("cross terms on a face without zeros")
        out = DualDecomposition(G_BAR, dd.rank_one_terms, (), face_data)
        validate(out)
        return out

    family = face_data.family()
    zeros = face_data.minimal_zeros
    lam_bar = [[Fraction(0)] * p for _ in zeros]

    # Re-anchor the cross terms over the zeros: anchor = sum alpha_j tau(j).
    for anchor, lam in dd.cross_terms:
        coeffs = hull_coefficients(anchor, family)
        if coeffs is None:
            raise CertificationError(
                f"anchor {anchor!r} is not in the hull of the minimal zeros"
            )
        for j, c in enumerate(coeffs):
            if c != 0:
                for k in range(p):
                    lam_bar[j][k] += c * lam[k]

    kept = []
    for alpha, mu in dd.rank_one_terms:
        if alpha == 0:
            continue
        rho = family.rho(mu)
        if rho >= family.sigma:
            kept.append((alpha, mu))
            continue
        if rho == 0:
            _absorb_hull_atom(alpha, mu.coords, family, zeros, lam_bar, p)
            continue
        gamma, nu, rest = _segment_split(mu, family)
        kept.append((alpha * gamma * gamma, nu))
        scale = sum(rest)
        if scale == 0:
            continue
        # alpha * (z r^T + r z^T) with z = gamma nu, plus alpha * r r^T.
        z = [gamma * c for c in nu.coords]
        half_r = [v / 2 for v in rest]
        combined = [alpha * (zc + hc) for zc, hc in zip(z, half_r)]
        rest_coeffs = hull_coefficients(_normalize(rest), family)
        if rest_coeffs is None:
            raise AssertionError("segment remainder must lie in the zero hull")
        for j, c in enumerate(rest_coeffs):
            w = c * scale
            if w != 0:
                for k in range(p):
                    lam_bar[j][k] += w * combined[k]

    cross = tuple(
        (tau, tuple(lam_bar[j]))
        for j, tau in enumerate(zeros)
        if any(v != 0 for v in lam_bar[j])
    )
    out = DualDecomposition(G_BAR, tuple(kept), cross, face_data)
    validate(out)
    assembled_in, assembled_out = assemble(
        DualDecomposition(dd.flavor, dd.rank_one_terms, dd.cross_terms, spec)
    ), assemble(out)
    if assembled_in.upper != assembled_out.upper:
        raise CertificationError("promotion failed to preserve the assembled matrix")
    return out


def _normalize(vec) -> SimplexVector:
    s = sum(vec)
    return SimplexVector(tuple(v / s for v in vec))


def _absorb_hull_atom(alpha, mu_coords, family, zeros, lam_bar, p):
    """alpha mu mu^T = (alpha/2) sum beta_j (tau(j) mu^T + mu tau(j)^T)."""
    coeffs = hull_coefficients(SimplexVector(mu_coords), family)
    if coeffs is None:
        raise AssertionError("hull membership was certified by rho = 0")
    for j, beta in enumerate(coeffs):
        w = alpha * beta / 2
        if w != 0:
            for k in range(p):
                lam_bar[j][k] += w * mu_coords[k]


def _segment_split(mu: SimplexVector, family: VectorFamily):
    """Split mu = gamma nu + rest with nu in the far region, rest in the hull cone.

    Searched one far-region slice at a time with an exact LP; existence is
    guaranteed because the simplex is the hull of the zero hull and the far
    region.  Returns (gamma, nu, rest coordinates).
    """
    p = mu.p
    members = family.members
    m = len(members)
    for y, c in family.omega_slices():
        # variables: z (p) >= 0, hull weights (m) >= 0; maximize e^T z
        nvars = p + m
        objective = [Fraction(-1)] * p + [Fraction(0)] * m
        rows = []
        for k in range(p):
            coeffs = [Fraction(0)] * nvars
            coeffs[k] = Fraction(1)
            for i, member in enumerate(members):
                coeffs[p + i] = member.coords[k]
            rows.append((coeffs, lp.EQ, mu.coords[k]))
        cut = [y[k] - c for k in range(p)] + [Fraction(0)] * m
        rows.append((cut, lp.GE, Fraction(0)))
        res = lp.solve_lp(lp.linear_program(objective, rows))
        if res.status != lp.OPTIMAL:
            continue
        gamma = sum(res.x[:p])
        if gamma <= 0:
            continue
        nu = SimplexVector(tuple(v / gamma for v in res.x[:p]))
        if not in_omega(nu, family):
            continue
        rest = [mu.coords[k] - res.x[k] for k in range(p)]
        if any(v < 0 for v in rest):
            continue
        return gamma, nu, rest
    raise CertificationError("no far-region segment split found; face data inconsistent")


# -- the order-2 counterexample ----------------------------------------------


@dataclass(frozen=True)
class GRefutation:
    """An exhaustive argument that a matrix admits no flavor-G decomposition."""

    face: FaceSpec
    matrix: SymMatrix
    steps: tuple
    conclusion: str
    tilde_witness: DualDecomposition = field(compare=False, default=None)


def refute_g_membership_paper_example() -> GRefutation:
    """The order-2 fixture: the off-diagonal unit matrix sits in the relaxed
    family but admits no strict flavor-G decomposition over its face.

    Any G cross term at anchor (1, 0) with mask {1} has lambda_2 = 0, so it
    contributes nothing to entries (1,2) and (2,2).  Entry (2,2) = 0 then
    forces every rank-one weight against mu_2, and entry (1,2) = 1 becomes
    unreachable.
    """
    spec = FaceSpec.of(2, [SimplexVector([1, 0])], [IndexSet({1}, 2)])
    lam = (Fraction(0), Fraction(1))
    tilde = DualDecomposition(
        G_TILDE, (), ((SimplexVector([1, 0]), lam),), spec
    )
    target = assemble(tilde)
    steps = (
        ("assembled relaxed-family element", target.rows()),
        (
            "cross terms with lambda_2 = 0 contribute only to entry (1,1)",
            [["2*lambda_1", "0"], ["0", "0"]],
        ),
        (
            "entry (2,2) of the rank-one part must equal",
            target.entry(2, 2),
        ),
        (
            "hence alpha_i mu_2(i)^2 = 0 for every term: each has alpha_i = 0 or mu(i) = (1,0)",
            0,
        ),
        (
            "so entry (1,2) of any candidate is 0, but the target requires",
            target.entry(1, 2),
        ),
    )
    return GRefutation(
        spec,
        target,
        steps,
        "entry (1,2): required 1, derivable 0 — no flavor-G decomposition exists",
        tilde,
    )
