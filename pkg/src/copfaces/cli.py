"""Command-line surface.

Exit codes: 0 success, 2 mathematically negative answer (not copositive,
invalid decomposition, infeasible/unbounded program), 1 operational failure
(parse errors, violated invariants, exhausted budgets).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import io
from .copreg import (
    LinearCopProblem,
    NoFeasiblePointError,
    find_immobile_zeros,
    minimal_face_of_problem,
    regularize,
    solve_discretized,
)
from .core import (
    CopfacesError,
    DEFAULT_MAX_P,
    InvariantViolationError,
    SymMatrix,
    quad_form,
    rational_str,
)
from .dual import (
    G,
    G_TILDE,
    assemble,
    promote_tilde_to_bar,
    refute_g_membership_paper_example,
    validate,
)
from .faces import FaceSpec, canonicalize_face, face_of_matrix, minimal_face
from .geometry import VectorFamily
from .io import ProblemFile, canonical_json, face_data_doc, matrix_rows, vector_strs
from .oracle import min_quad_over_simplex, minimal_zero_vectors, zero_pieces_of_matrix
from .zeros import MatrixSet, catalog, zero_set


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, doc = args.handler(args)
    except (io.ParseError, InvariantViolationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except NoFeasiblePointError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except CopfacesError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    text = canonical_json(doc) if args.format == "json" else io.render_text(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="copfaces")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=4, help="grid denominator")
    common.add_argument("--seed", type=int, default=0, help="seed recorded in certificates")
    common.add_argument("--max-p", type=int, default=DEFAULT_MAX_P, dest="max_p")
    common.add_argument("--out", default=None, help="write the certificate to this path")
    common.add_argument("--format", choices=("json", "text"), default="json")

    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("check-cop", parents=[common], help="exact copositivity check")
    cmd.add_argument("file")
    cmd.set_defaults(handler=_cmd_check_cop)

    cmd = sub.add_parser("zeros", parents=[common], help="zero set as support pieces")
    cmd.add_argument("file")
    cmd.set_defaults(handler=_cmd_zeros)

    cmd = sub.add_parser("minimal-zeros", parents=[common], help="minimal zeros and M-sets")
    cmd.add_argument("file")
    cmd.set_defaults(handler=_cmd_minimal_zeros)

    cmd = sub.add_parser("face", parents=[common], help="canonical face data")
    cmd.add_argument("file")
    cmd.set_defaults(handler=_cmd_face)

    cmd = sub.add_parser("dual", parents=[common], help="validate a dual decomposition")
    cmd.add_argument("file", help="face_spec problem file")
    cmd.add_argument("--decomposition", required=True, help="decomposition JSON file")
    cmd.set_defaults(handler=_cmd_dual)

    cmd = sub.add_parser("regularize", parents=[common], help="certified facial reduction")
    cmd.add_argument("file")
    cmd.set_defaults(handler=_cmd_regularize)

    cmd = sub.add_parser("solve", parents=[common], help="cutting-plane exact solve")
    cmd.add_argument("file")
    cmd.set_defaults(handler=_cmd_solve)
    return parser


def _jsonify(value):
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    return value


def _load(args, *kinds) -> tuple[str, ProblemFile]:
    with open(args.file) as fh:
        text = fh.read()
    pf = io.parse_problem(text)
    if kinds and pf.kind not in kinds:
        raise io.ParseError(f"command needs a file of kind {kinds}, got {pf.kind!r}")
    return text, pf


def _params(args) -> dict:
    return {"grid": args.grid, "seed": args.seed, "max_p": args.max_p}


def _cmd_check_cop(args):
    text, pf = _load(args, "matrix")
    D: SymMatrix = pf.payload
    res = min_quad_over_simplex(D, args.max_p)
    checks = [
        {"check": "exact minimum of t^T D t over the simplex", "value": rational_str(res.min_value)},
        {"check": "supports enumerated", "value": res.supports_enumerated},
    ]
    if res.min_value >= 0:
        zeros = minimal_zero_vectors(zero_pieces_of_matrix(D, args.max_p))
        outputs = {
            "copositive": True,
            "min_value": rational_str(res.min_value),
            "minimal_zero_count": len(zeros),
            "minimal_zeros": [vector_strs(t) for t in zeros],
        }
        for t in zeros:
            checks.append(
                {"check": "zero value at minimal zero", "value": rational_str(quad_form(D, t))}
            )
        return 0, io.certificate("check-cop", text, _params(args), outputs, checks)
    witness = res.minimizers[0]
    outputs = {
        "copositive": False,
        "min_value": rational_str(res.min_value),
        "witness": vector_strs(witness),
    }
    checks.append(
        {"check": "negative value at witness", "value": rational_str(quad_form(D, witness))}
    )
    return 2, io.certificate("check-cop", text, _params(args), outputs, checks)


def _as_matrix_set(pf: ProblemFile, max_p: int) -> MatrixSet:
    if pf.kind == "matrix":
        return MatrixSet.of([pf.payload], max_p)
    return MatrixSet.of(pf.payload, max_p)


def _cmd_zeros(args):
    text, pf = _load(args, "matrix", "matrix_set")
    Q = _as_matrix_set(pf, args.max_p)
    pieces = zero_set(Q, args.max_p)
    outputs = {
        "pieces": [
            {
                "support": list(p.support.indices),
                "point": vector_strs(p.point),
                "degrees_of_freedom": p.degrees_of_freedom,
            }
            for p in pieces
        ]
    }
    checks = [
        {
            "check": "zero value at piece representative",
            "value": rational_str(max(quad_form(G, p.point) for G in Q.generators)),
        }
        for p in pieces
    ]
    return 0, io.certificate("zeros", text, _params(args), outputs, checks)


def _cmd_minimal_zeros(args):
    text, pf = _load(args, "matrix", "matrix_set")
    Q = _as_matrix_set(pf, args.max_p)
    cat = catalog(Q, args.max_p)
    outputs = {
        "minimal_zeros": [vector_strs(t) for t in cat.minimal_zeros],
        "m_sets": [list(M.indices) for M in cat.m_sets],
    }
    checks = [
        {"check": "supports form an antichain", "value": True},
    ]
    return 0, io.certificate("minimal-zeros", text, _params(args), outputs, checks)


def _cmd_face(args):
    text, pf = _load(args, "matrix", "matrix_set", "face_spec")
    if pf.kind == "face_spec":
        fd = canonicalize_face(pf.payload, args.max_p)
    elif pf.kind == "matrix":
        fd = face_of_matrix(pf.payload, args.max_p)
    else:
        fd = minimal_face(_as_matrix_set(pf, args.max_p), args.max_p)
    outputs = face_data_doc(fd)
    checks = [{"check": "canonicalization certified exact", "value": fd.exact}]
    return 0, io.certificate("face", text, _params(args), outputs, checks)


def _is_paper_dual_fixture(spec: FaceSpec, dd) -> bool:
    from .core import IndexSet, SimplexVector

    return (
        spec.p == 2
        and spec.vectors == (SimplexVector([1, 0]),)
        and spec.masks == (IndexSet({1}, 2),)
        and dd.flavor == G_TILDE
        and assemble(dd).rows() == SymMatrix.from_rows([[0, 1], [1, 0]]).rows()
    )


def _cmd_dual(args):
    text, pf = _load(args, "face_spec")
    with open(args.decomposition) as fh:
        dd_text = fh.read()
    dd = io.parse_decomposition(dd_text, pf.payload)
    try:
        validate(dd)
    except InvariantViolationError as e:
        outputs = {"valid": False, "reason": str(e)}
        return 2, io.certificate("dual", text + dd_text, _params(args), outputs, [])
    D = assemble(dd)
    outputs = {"valid": True, "flavor": dd.flavor, "assembled": matrix_rows(D)}
    checks = [{"check": "assembled matrix entries", "value": matrix_rows(D)}]
    if dd.flavor in (G, G_TILDE):
        fd = canonicalize_face(pf.payload, args.max_p)
        if fd.exact:
            promoted = promote_tilde_to_bar(dd, fd, args.max_p)
            outputs["promoted"] = {
                "rank_one_terms": [
                    {"alpha": rational_str(a), "mu": vector_strs(mu)}
                    for a, mu in promoted.rank_one_terms
                ],
                "cross_terms": [
                    {"anchor": vector_strs(anchor), "lambda": [rational_str(v) for v in lam]}
                    for anchor, lam in promoted.cross_terms
                ],
            }
            checks.append(
                {
                    "check": "promotion preserves the assembled matrix",
                    "value": assemble(promoted).upper == D.upper,
                }
            )
    if _is_paper_dual_fixture(pf.payload, dd):
        ref = refute_g_membership_paper_example()
        outputs["g_refutation"] = {
            "conclusion": ref.conclusion,
            "steps": [
                {"claim": claim, "value": _jsonify(value)} for claim, value in ref.steps
            ],
        }
    return 0, io.certificate("dual", text + dd_text, _params(args), outputs, checks)


def _cmd_regularize(args):
    text, pf = _load(args, "lincop")
    prob: LinearCopProblem = pf.payload
    cert = find_immobile_zeros(prob, grid=args.grid, max_p=args.max_p)
    if cert.inconclusive:
        outputs = {
            "status": "inconclusive",
            "inconclusive": [vector_strs(t) for t in cert.inconclusive],
        }
        return 1, io.certificate("regularize", text, _params(args), outputs, [])
    reg = regularize(prob, cert, grid=args.grid)
    fd = minimal_face_of_problem(prob, cert, args.max_p)
    outputs = {
        "slater": cert.slater,
        "zeros": [vector_strs(t) for t in cert.zeros],
        "m_sets": [list(M.indices) for M in cert.m_sets],
        "sigma": None if reg.sigma is None else rational_str(reg.sigma),
        "grid": reg.grid,
        "finite_constraint_count": len(cert.zeros) * prob.p,
        "minimal_face": face_data_doc(fd),
    }
    sample_matrix = prob.matrix_at(cert.samples[0])
    checks = [
        {
            "check": "largest zero value over certified zeros at a feasible sample",
            "value": rational_str(
                max((quad_form(sample_matrix, t) for t in cert.zeros), default=Fraction(0))
            ),
        }
    ]
    return 0, io.certificate("regularize", text, _params(args), outputs, checks)


def _cmd_solve(args):
    text, pf = _load(args, "lincop")
    prob: LinearCopProblem = pf.payload
    cert = find_immobile_zeros(prob, grid=args.grid, max_p=args.max_p)
    reg = regularize(prob, cert, grid=args.grid)
    result = solve_discretized(reg, max_p=args.max_p)
    outputs = {
        "status": result.status,
        "x": None if result.x is None else [rational_str(v) for v in result.x],
        "value": None if result.value is None else rational_str(result.value),
        "rounds": result.rounds,
        "verified": result.verified,
    }
    checks = []
    if result.status == "optimal":
        checks.append(
            {
                "check": "constraint matrix at the optimum is copositive",
                "value": result.verified,
            }
        )
        return 0, io.certificate("solve", text, _params(args), outputs, checks)
    return 2, io.certificate("solve", text, _params(args), outputs, checks)


if __name__ == "__main__":
    raise SystemExit(main())
