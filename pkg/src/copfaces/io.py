"""JSON exchange formats: problem files, decomposition files, certificates.

Every number travels as an exact rational string "num/den" in lowest terms
with a positive denominator; floats are rejected.  Serialization is canonical
(sorted keys, two-space indent, trailing newline), so parse/serialize round
trips are byte-identical on canonical files.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    IndexSet,
    ParseError,
    SimplexVector,
    SymMatrix,
    rational,
    rational_str,
)
from .copreg import LinearCopProblem
from .dual import DualDecomposition
from .faces import FaceData, FaceSpec

KINDS = ("matrix", "matrix_set", "face_spec", "lincop")


@dataclass(frozen=True)
class ProblemFile:
    p: int
    kind: str
    payload: object  # SymMatrix | list[SymMatrix] | FaceSpec | LinearCopProblem


def _require(cond: bool, message: str):
    if not cond:
        raise ParseError(message)


def parse_problem(text: str) -> ProblemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    _require(isinstance(doc, dict), "top-level document must be an object")
    _require("p" in doc and isinstance(doc["p"], int), "field 'p' must be an integer")
    p = doc["p"]
    _require(p >= 1, "'p' must be >= 1")
    kind = doc.get("kind")
    _require(kind in KINDS, f"'kind' must be one of {KINDS}")
    if kind == "matrix":
        payload = _parse_matrix(doc.get("matrix"), p)
    elif kind == "matrix_set":
        gens = doc.get("generators")
        _require(isinstance(gens, list) and gens, "'generators' must be a nonempty list")
        payload = [_parse_matrix(g, p) for g in gens]
    elif kind == "face_spec":
        vectors = doc.get("vectors", [])
        masks = doc.get("masks", [])
        _require(isinstance(vectors, list) and isinstance(masks, list), "bad face fields")
        _require(len(vectors) == len(masks), "'vectors' and 'masks' lengths differ")
        vecs = [_parse_vector(v, p) for v in vectors]
        msk = [_parse_indexset(m, p) for m in masks]
        payload = FaceSpec.of(p, vecs, msk)
    else:
        objective = doc.get("objective")
        _require(isinstance(objective, list) and objective, "'objective' must be nonempty")
        base = _parse_matrix(doc.get("base"), p)
        coeffs = doc.get("coefficients")
        _require(isinstance(coeffs, list) and len(coeffs) == len(objective),
                 "'coefficients' must match the objective length")
        payload = LinearCopProblem.of(
            [_rat(v) for v in objective], base, [_parse_matrix(c, p) for c in coeffs]
        )
    return ProblemFile(p, kind, payload)


def serialize_problem(pf: ProblemFile) -> str:
    doc = {"p": pf.p, "kind": pf.kind}
    if pf.kind == "matrix":
        doc["matrix"] = matrix_rows(pf.payload)
    elif pf.kind == "matrix_set":
        doc["generators"] = [matrix_rows(G) for G in pf.payload]
    elif pf.kind == "face_spec":
        doc["vectors"] = [vector_strs(t) for t in pf.payload.vectors]
        doc["masks"] = [list(L.indices) for L in pf.payload.masks]
    else:
        prob = pf.payload
        doc["objective"] = [rational_str(c) for c in prob.objective]
        doc["base"] = matrix_rows(prob.base)
        doc["coefficients"] = [matrix_rows(C) for C in prob.coefficients]
    return canonical_json(doc)


def parse_decomposition(text: str, context) -> DualDecomposition:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    _require(isinstance(doc, dict), "decomposition must be an object")
    flavor = doc.get("flavor")
    _require(flavor in ("G", "G-tilde", "G-bar"), "unknown decomposition flavor")
    p = context.p
    rank_ones = []
    for term in doc.get("rank_one_terms", []):
        alpha = _rat(term.get("alpha"))
        mu = _parse_vector(term.get("mu"), p)
        rank_ones.append((alpha, mu))
    cross = []
    for term in doc.get("cross_terms", []):
        anchor = _parse_vector(term.get("anchor"), p)
        lam = term.get("lambda")
        _require(isinstance(lam, list) and len(lam) == p, "'lambda' must have length p")
        cross.append((anchor, tuple(_rat(v) for v in lam)))
    return DualDecomposition(flavor, tuple(rank_ones), tuple(cross), context)


def serialize_decomposition(dd: DualDecomposition) -> str:
    doc = {
        "flavor": dd.flavor,
        "rank_one_terms": [
            {"alpha": rational_str(a), "mu": vector_strs(mu)} for a, mu in dd.rank_one_terms
        ],
        "cross_terms": [
            {"anchor": vector_strs(anchor), "lambda": [rational_str(v) for v in lam]}
            for anchor, lam in dd.cross_terms
        ],
    }
    return canonical_json(doc)


def _rat(value) -> Fraction:
    if isinstance(value, float):
        raise ParseError(f"floats are rejected in exchange formats: {value!r}")
    return rational(value)


def _parse_matrix(rows, p: int) -> SymMatrix:
    _require(isinstance(rows, list) and len(rows) == p, f"matrix must have {p} rows")
    for row in rows:
        _require(isinstance(row, list) and len(row) == p, f"matrix rows must have {p} entries")
    return SymMatrix.from_rows([[_rat(v) for v in row] for row in rows])


def _parse_vector(coords, p: int) -> SimplexVector:
    _require(isinstance(coords, list) and len(coords) == p, f"vector must have {p} entries")
    return SimplexVector([_rat(v) for v in coords])


def _parse_indexset(indices, p: int) -> IndexSet:
    _require(isinstance(indices, list), "index sets must be lists")
    for k in indices:
        _require(isinstance(k, int), "index sets hold 1-based integers")
    return IndexSet(indices, p)


def matrix_rows(M: SymMatrix):
    return [[rational_str(v) for v in M.row(k)] for k in range(1, M.p + 1)]


def vector_strs(t: SimplexVector):
    return [rational_str(c) for c in t.coords]


def face_data_doc(fd: FaceData) -> dict:
    return {
        "minimal_zeros": [vector_strs(t) for t in fd.minimal_zeros],
        "m_sets": [list(M.indices) for M in fd.m_sets],
        "sigma": None if fd.sigma is None else rational_str(fd.sigma),
        "exact": fd.exact,
    }


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def certificate(operation: str, input_text: str, parameters: dict, outputs: dict, checks) -> dict:
    return {
        "operation": operation,
        "inputs_digest": digest(input_text),
        "parameters": parameters,
        "outputs": outputs,
        "verification": list(checks),
    }


def render_text(doc, prefix: str = "") -> str:
    """Stable line-oriented key: value rendering of a certificate document."""
    lines = []

    def walk(node, path):
        if isinstance(node, dict):
            for key in sorted(node):
                walk(node[key], f"{path}.{key}" if path else key)
        elif isinstance(node, list):
            if all(not isinstance(v, (dict, list)) for v in node):
                lines.append(f"{path}: {json.dumps(node)}")
            else:
                for i, v in enumerate(node):
                    walk(v, f"{path}[{i}]")
        else:
            lines.append(f"{path}: {json.dumps(node)}")

    walk(doc, prefix)
    return "\n".join(lines) + "\n"
