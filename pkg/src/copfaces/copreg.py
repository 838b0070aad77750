"""Linear copositive programs: membership routes, certified immobile zeros,
facial-reduction regularization, and a desk-scale discretization solver.

The constraint is A(x) = A_0 + sum x_i A_i copositive.  Certification of an
immobile zero tau is one-sided and sound: tau^T A(x) tau is linear in x and
nonnegative on the feasible set, so when its maximum over an outer polyhedral
relaxation (finitely many grid inequalities t^T A(x) t >= 0) is exactly zero,
tau is immobile.  Witness points returned by the relaxation are either
feasible (disproving immobility or enlarging the sample) or yield new exact
cuts from the copositivity oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import lp
from .core import (
    DEFAULT_MAX_P,
    CertificationError,
    CopfacesError,
    DimensionMismatchError,
    IndexSet,
    SimplexVector,
    SymMatrix,
    matvec_row,
    quad_form,
    rational,
    unit_vector,
)
from .faces import FaceData
from .geometry import VectorFamily, in_omega, omega_grid, simplex_grid
from .oracle import copositivity_witness, is_copositive, min_quad_with_cut, minimal_zero_vectors
from .zeros import MatrixSet, m_sets, zero_set


class NoFeasiblePointError(CopfacesError):
    pass


@dataclass(frozen=True)
class LinearCopProblem:
    """min c^T x  s.t.  A_0 + sum x_i A_i copositive."""

    objective: tuple
    base: SymMatrix
    coefficients: tuple

    @classmethod
    def of(cls, objective: Sequence, base: SymMatrix, coefficients: Sequence[SymMatrix]):
        objective = tuple(rational(c) for c in objective)
        coefficients = tuple(coefficients)
        if len(objective) != len(coefficients) or not coefficients:
            raise DimensionMismatchError("objective length must match coefficient count")
        if any(C.p != base.p for C in coefficients):
            raise DimensionMismatchError("mixed matrix orders")
        return cls(objective, base, coefficients)

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def n(self) -> int:
        return len(self.objective)

    def matrix_at(self, x: Sequence) -> SymMatrix:
        x = [rational(v) for v in x]
        if len(x) != self.n:
            raise DimensionMismatchError("point length != number of variables")
        total = self.base
        for xi, C in zip(x, self.coefficients):
            if xi != 0:
                total = total.add(C.scale(xi))
        return total

    def quad_affine(self, t: SimplexVector):
        """t^T A(x) t as (constant, linear coefficients)."""
        return quad_form(self.base, t), tuple(quad_form(C, t) for C in self.coefficients)

    def row_affine(self, t: SimplexVector, k: int):
        """e_k^T A(x) t as (constant, linear coefficients)."""
        return (
            matvec_row(self.base, t, k),
            tuple(matvec_row(C, t, k) for C in self.coefficients),
        )


def feasible_membership(prob: LinearCopProblem, x: Sequence, max_p: int = DEFAULT_MAX_P) -> bool:
    """Exact feasibility via the copositivity oracle."""
    return is_copositive(prob.matrix_at(x), max_p)


def equivalent_membership(
    prob: LinearCopProblem,
    x: Sequence,
    V: Optional[VectorFamily],
    grid: int,
    exact: bool = False,
    max_p: int = DEFAULT_MAX_P,
) -> bool:
    """Membership via zero-anchored rays plus far-region nonnegativity.

    With ``exact=False`` the far region is sampled on the grid; with
    ``exact=True`` it is decided exactly through its halfspace slices.  The
    family members must be certified immobile zeros (caller's contract).
    """
    A = prob.matrix_at(x)
    if V is None:
        return is_copositive(A, max_p)
    for t in V.members:
        if any(matvec_row(A, t, k) < 0 for k in range(1, prob.p + 1)):
            return False
    for t in omega_grid(V, grid):
        if quad_form(A, t) < 0:
            return False
    if exact:
        for y, c in V.omega_slices():
            hit = min_quad_with_cut(A, y, c, max_p)
            if hit is not None and hit[0] < 0:
                return False
    return True


# -- outer relaxation machinery ------------------------------------------------

_RAY_BOX = Fraction(1 << 16)


def _cut_row(prob: LinearCopProblem, t: SimplexVector):
    const, lin = prob.quad_affine(t)
    return (tuple(lin), lp.GE, -const)


def _relaxation_max(prob: LinearCopProblem, const: Fraction, lin, cuts, boxed: bool):
    """Maximize const + lin . x over the cut polyhedron; returns an LPResult
    for the negated (minimizing) problem plus the achieved maximum."""
    rows = [_cut_row(prob, t) for t in cuts]
    bounds = [(-_RAY_BOX, _RAY_BOX) if boxed else (None, None)] * prob.n
    res = lp.solve_lp(lp.linear_program([-v for v in lin], rows, bounds))
    if res.status == lp.OPTIMAL:
        return res, const - res.value
    return res, None


@dataclass(frozen=True)
class CertRecord:
    kind: str  # "zero" or "row"
    target: object  # the zero, or (k, zero index)
    status: str  # "immobile" / "member" / "mobile" / "inconclusive"
    lp_value: Optional[Fraction]
    witness: Optional[tuple] = None


@dataclass(frozen=True)
class ImmobileCertificate:
    zeros: tuple  # certified immobile zeros, canonical order
    m_sets: tuple  # certified row sets, aligned with zeros
    certification: tuple  # CertRecord transcript
    samples: tuple  # feasible points examined
    slater: bool  # True when the zero set was proven empty
    inconclusive: tuple = ()  # candidates that exhausted the budget


def _bootstrap_feasible(prob: LinearCopProblem, grid: int, budget: int, max_p: int):
    probes = [tuple(Fraction(0) for _ in range(prob.n))]
    for i in range(prob.n):
        for v in (1, -1, 2, -2):
            probes.append(
                tuple(Fraction(v) if j == i else Fraction(0) for j in range(prob.n))
            )
    found = [x for x in probes if feasible_membership(prob, x, max_p)]
    if found:
        return found, [*simplex_grid(prob.p, grid)]
    cuts = [*simplex_grid(prob.p, grid)]
    for _ in range(budget):
        rows = [_cut_row(prob, t) for t in cuts]
        res = lp.solve_lp(
            lp.linear_program([Fraction(0)] * prob.n, rows, [(None, None)] * prob.n)
        )
        if res.status == lp.INFEASIBLE:
            raise NoFeasiblePointError("outer relaxation is empty: no feasible point exists")
        x = res.x
        witness = copositivity_witness(prob.matrix_at(x), max_p)
        if witness is None:
            return [x], cuts
        cuts.append(witness)
    raise NoFeasiblePointError("no feasible point found within budget")


def _certify_linear_max(prob, const, lin, cuts, samples, budget, max_p):
    """Drive the outer maximum of an affine form to a certificate.

    Returns (status, value, witness) with status "zero" (max over the outer
    set is exactly 0), "positive" (a feasible point with positive value), or
    "inconclusive".  Mutates cuts/samples with the exchange progress.
    """
    for x in samples:
        value = const + sum(a * b for a, b in zip(lin, x))
        if value > 0:
            return "positive", value, tuple(x)
    for _ in range(budget):
        res, best = _relaxation_max(prob, const, lin, cuts, boxed=False)
        if best is None:
            res, best = _relaxation_max(prob, const, lin, cuts, boxed=True)
            if best is None:
                return "inconclusive", None, None
        if best == 0:
            return "zero", Fraction(0), None
        if best < 0:
            raise AssertionError("outer maximum cannot undercut feasible values")
        x = res.x
        witness = copositivity_witness(prob.matrix_at(x), max_p)
        if witness is None:
            samples.append(tuple(x))
            return "positive", best, tuple(x)
        cuts.append(witness)
    return "inconclusive", None, None


def find_immobile_zeros(
    prob: LinearCopProblem,
    budget: int = 12,
    grid: int = 4,
    max_p: int = DEFAULT_MAX_P,
) -> ImmobileCertificate:
    """Certified immobile zeros of the constraint family, one-sided.

    Every returned zero is guaranteed immobile; completeness is only proven
    in the Slater case (empty sampled zero set), which is reported via the
    ``slater`` flag.
    """
    samples, cuts = _bootstrap_feasible(prob, grid, budget, max_p)
    samples = [tuple(rational(v) for v in x) for x in samples]
    records = []
    for _ in range(budget):
        sampled = MatrixSet(tuple(prob.matrix_at(x) for x in samples), prob.p)
        pieces = zero_set(sampled, max_p)
        if not pieces:
            return ImmobileCertificate((), (), tuple(records), tuple(samples), True)
        candidates = minimal_zero_vectors(pieces)
        certified = []
        progressed = False
        inconclusive = []
        for tau in candidates:
            const, lin = prob.quad_affine(tau)
            before = len(samples)
            status, value, witness = _certify_linear_max(
                prob, const, lin, cuts, samples, budget, max_p
            )
            if status == "zero":
                certified.append(tau)
                records.append(CertRecord("zero", tau, "immobile", Fraction(0)))
            elif status == "positive":
                records.append(CertRecord("zero", tau, "mobile", value, witness))
                progressed = True
            else:
                inconclusive.append(tau)
                records.append(CertRecord("zero", tau, "inconclusive", None))
            if len(samples) != before:
                progressed = True
        if len(certified) == len(candidates):
            msets = _certify_m_sets(prob, certified, cuts, samples, records, budget, max_p)
            return ImmobileCertificate(
                tuple(certified), tuple(msets), tuple(records), tuple(samples), False
            )
        if not progressed:
            return ImmobileCertificate(
                tuple(certified),
                tuple(_certify_m_sets(prob, certified, cuts, samples, records, budget, max_p)),
                tuple(records),
                tuple(samples),
                False,
                tuple(inconclusive),
            )
    raise CertificationError("immobile-zero exchange exhausted its budget")


def _certify_m_sets(prob, zeros, cuts, samples, records, budget, max_p):
    msets = []
    for j, tau in enumerate(zeros, start=1):
        members = []
        for k in range(1, prob.p + 1):
            const, lin = prob.row_affine(tau, k)
            status, value, witness = _certify_linear_max(
                prob, const, lin, cuts, samples, budget, max_p
            )
            if status == "zero":
                members.append(k)
                records.append(CertRecord("row", (k, j), "member", Fraction(0)))
            elif status == "positive":
                records.append(CertRecord("row", (k, j), "mobile", value, witness))
            else:
                records.append(CertRecord("row", (k, j), "inconclusive", None))
        msets.append(IndexSet(members, prob.p))
    return msets


# -- regularization and the discretized solver --------------------------------


@dataclass(frozen=True)
class RegularizedProblem:
    base: LinearCopProblem
    anchors: tuple  # certified immobile zeros
    grid: int
    sigma: Optional[Fraction]

    def family(self) -> Optional[VectorFamily]:
        return VectorFamily(self.anchors) if self.anchors else None


def regularize(prob: LinearCopProblem, cert: ImmobileCertificate, grid: int = 4) -> RegularizedProblem:
    """The equivalent program with explicit zero-anchored linear constraints.

    The quadratic family is restricted to the far region of the certified
    zeros; with an empty certificate (Slater) the problem is returned with
    the plain grid family.
    """
    if cert.inconclusive:
        raise CertificationError("certificate has inconclusive candidates")
    sigma = VectorFamily(cert.zeros).sigma if cert.zeros else None
    return RegularizedProblem(prob, cert.zeros, grid, sigma)


def minimal_face_of_problem(
    prob: LinearCopProblem, cert: ImmobileCertificate, max_p: int = DEFAULT_MAX_P
) -> FaceData:
    """Face data of the smallest face containing the whole constraint image."""
    if cert.inconclusive:
        raise CertificationError("certificate has inconclusive candidates")
    if any(r.status == "inconclusive" for r in cert.certification):
        raise CertificationError("certificate has inconclusive row entries")
    sigma = VectorFamily(cert.zeros).sigma if cert.zeros else None
    return FaceData(prob.p, cert.zeros, cert.m_sets, sigma, source=prob, exact=True)


@dataclass(frozen=True)
class SolveResult:
    status: str  # optimal / infeasible / unbounded
    x: Optional[tuple]
    value: Optional[Fraction]
    rounds: int
    verified: bool  # oracle confirmed feasibility of the reported point

    def __iter__(self):
        return iter((self.status, self.x, self.value))


def solve_discretized(
    reg: RegularizedProblem,
    max_rounds: int = 16,
    max_p: int = DEFAULT_MAX_P,
) -> SolveResult:
    """Exact cutting-plane solve of the regularized program.

    Each round solves the outer LP; an optimal point is either confirmed
    copositive by the oracle (hence exactly optimal) or refuted with a new
    exact cut.  Unbounded relaxations are certified through a feasible base
    point and a copositive recession direction.
    """
    prob = reg.base
    family = reg.family()
    if family is not None:
        cuts = list(omega_grid(family, reg.grid))
    else:
        cuts = list(simplex_grid(prob.p, reg.grid))
    fixed_rows = []
    for tau in reg.anchors:
        for k in range(1, prob.p + 1):
            const, lin = prob.row_affine(tau, k)
            fixed_rows.append((tuple(lin), lp.GE, -const))

    den = reg.grid
    for round_no in range(1, max_rounds + 1):
        rows = fixed_rows + [_cut_row(prob, t) for t in cuts]
        res = lp.solve_lp(
            lp.linear_program(list(prob.objective), rows, [(None, None)] * prob.n)
        )
        if res.status == lp.INFEASIBLE:
            return SolveResult(lp.INFEASIBLE, None, None, round_no, True)
        if res.status == lp.UNBOUNDED:
            verdict = _certify_unbounded(prob, cuts, fixed_rows, max_rounds, max_p)
            if verdict:
                return SolveResult(lp.UNBOUNDED, None, None, round_no, True)
            den *= 2
            cuts = _expand_cuts(reg, family, prob, den, cuts)
            continue
        witness = copositivity_witness(prob.matrix_at(res.x), max_p)
        if witness is None:
            return SolveResult(lp.OPTIMAL, res.x, res.value, round_no, True)
        cuts.append(witness)
        den *= 2
        if den <= 64:
            cuts = _expand_cuts(reg, family, prob, den, cuts)
    raise CertificationError("discretized solve exceeded its refinement cap")


def _expand_cuts(reg, family, prob, den, cuts):
    fresh = omega_grid(family, den) if family is not None else simplex_grid(prob.p, den)
    merged = list(dict.fromkeys([*cuts, *fresh]))
    return merged


def _certify_unbounded(prob, cuts, fixed_rows, budget, max_p) -> bool:
    """True when a feasible point plus a copositive descent ray is exhibited."""
    try:
        x0 = _feasible_from_cuts(prob, cuts, fixed_rows, budget, max_p)
    except NoFeasiblePointError:
        return False
    ray_cuts = list(cuts)
    for _ in range(budget):
        rows = []
        for t in ray_cuts:
            _, lin = prob.quad_affine(t)
            rows.append((tuple(lin), lp.GE, Fraction(0)))
        bounds = [(Fraction(-1), Fraction(1))] * prob.n
        res = lp.solve_lp(lp.linear_program(list(prob.objective), rows, bounds))
        if res.status != lp.OPTIMAL or res.value >= 0:
            return False
        direction = SymMatrix.zeros(prob.p)
        for xi, C in zip(res.x, prob.coefficients):
            if xi != 0:
                direction = direction.add(C.scale(xi))
        witness = copositivity_witness(direction, max_p)
        if witness is None:
            return True
        ray_cuts.append(witness)
    return False


def _feasible_from_cuts(prob, cuts, fixed_rows, budget, max_p):
    work = list(cuts)
    for _ in range(budget):
        rows = fixed_rows + [_cut_row(prob, t) for t in work]
        res = lp.solve_lp(
            lp.linear_program([Fraction(0)] * prob.n, rows, [(None, None)] * prob.n)
        )
        if res.status == lp.INFEASIBLE:
            raise NoFeasiblePointError("outer relaxation is empty")
        if res.status != lp.OPTIMAL:
            raise NoFeasiblePointError("feasibility relaxation did not settle")
        witness = copositivity_witness(prob.matrix_at(res.x), max_p)
        if witness is None:
            return res.x
        work.append(witness)
    raise NoFeasiblePointError("no feasible point found within budget")
