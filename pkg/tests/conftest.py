"""Shared corpora and samplers for the test suite.

Everything is seeded; rerunning the suite reproduces identical fixtures.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from copfaces.core import IndexSet, SimplexVector, SymMatrix, horn_matrix
from copfaces.faces import FaceSpec
from copfaces.zeros import MatrixSet


def rational_in(rng: random.Random, lo: int = -2, hi: int = 2, max_den: int = 3) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_simplex_vector(rng: random.Random, p: int, support_size: int | None = None) -> SimplexVector:
    if support_size is None:
        support_size = rng.randint(1, p)
    support = sorted(rng.sample(range(p), support_size))
    weights = [rng.randint(1, 6) for _ in support]
    total = sum(weights)
    coords = [Fraction(0)] * p
    for idx, w in zip(support, weights):
        coords[idx] = Fraction(w, total)
    return SimplexVector(coords)


def _project_off(vec, tau: SimplexVector):
    """Remove the tau-component so that the resulting row annihilates tau."""
    dot = sum(a * b for a, b in zip(vec, tau.coords))
    if dot == 0:
        return list(vec)
    norm = sum(c * c for c in tau.coords)
    return [a - dot * c / norm for a, c in zip(vec, tau.coords)]


def random_psd_plus_nonneg(
    rng: random.Random, p: int, zeros: list[SimplexVector] = ()
) -> SymMatrix:
    """A random copositive matrix (PSD + entrywise nonnegative) vanishing on
    the prescribed simplex vectors."""
    total = SymMatrix.zeros(p)
    for _ in range(rng.randint(1, p)):
        x = [rational_in(rng) for _ in range(p)]
        for tau in zeros:
            x = _project_off(x, tau)
        rows = [[x[a] * x[b] for b in range(p)] for a in range(p)]
        total = total.add(SymMatrix.from_rows(rows))
    blocked = set()
    for tau in zeros:
        supp = tau.support.indices
        for a in supp:
            for b in supp:
                blocked.add((min(a, b), max(a, b)))
    rows = [[Fraction(0)] * p for _ in range(p)]
    for a in range(1, p + 1):
        for b in range(a, p + 1):
            if (a, b) in blocked:
                continue
            if rng.random() < 0.4:
                v = Fraction(rng.randint(0, 4), rng.randint(1, 2))
                rows[a - 1][b - 1] = v
                rows[b - 1][a - 1] = v
    return total.add(SymMatrix.from_rows(rows))


def random_matrix_set(rng: random.Random, p: int, max_generators: int = 4) -> MatrixSet:
    """A seeded finitely generated subset; roughly half get forced common zeros."""
    style = rng.random()
    zeros: list[SimplexVector] = []
    if style < 0.45:
        zeros = [random_simplex_vector(rng, p)]
    elif style < 0.6:
        first = random_simplex_vector(rng, p, rng.randint(1, max(1, p - 1)))
        second = random_simplex_vector(rng, p)
        zeros = [first] if first == second else [first, second]
    count = rng.randint(1, max_generators)
    gens = [random_psd_plus_nonneg(rng, p, zeros) for _ in range(count)]
    return MatrixSet(tuple(gens), p)


def matrix_set_corpus(seed: int, size: int, orders=(2, 3, 4)) -> list[MatrixSet]:
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        p = rng.choice(orders)
        out.append(random_matrix_set(rng, p))
    return out


def _sv(*coords) -> SimplexVector:
    return SimplexVector(coords)


def _face(p, vectors, masks) -> FaceSpec:
    return FaceSpec.of(p, vectors, [IndexSet(m, p) for m in masks])


FACE_FIXTURES = [
    ("improper-2", _face(2, [], [])),
    ("ray-2", _face(2, [_sv("1/2", "1/2")], [{1, 2}])),
    ("vertex-exposed-2", _face(2, [_sv(1, 0)], [{1}])),
    ("vertex-masked-2", _face(2, [_sv(1, 0)], [{1, 2}])),
    ("both-vertices-2", _face(2, [_sv(1, 0), _sv(0, 1)], [{1}, {2}])),
    (
        "nested-supports-3",
        _face(3, [_sv("1/2", "1/2", 0), _sv("1/4", "1/4", "1/2")], [{1, 2}, {1, 2, 3}]),
    ),
    ("edge-3", _face(3, [_sv("1/2", 0, "1/2")], [{1, 3}])),
    ("barycenter-3", _face(3, [_sv("1/3", "1/3", "1/3")], [{1, 2, 3}])),
    ("masked-edge-3", _face(3, [_sv("1/2", "1/2", 0)], [{1, 2, 3}])),
    (
        "disjoint-pair-4",
        _face(4, [_sv("1/2", "1/2", 0, 0), _sv(0, 0, "1/2", "1/2")], [{1, 2}, {3, 4}]),
    ),
    ("deep-4", _face(4, [_sv("1/2", "1/4", "1/4", 0)], [{1, 2, 3}])),
]


MATRIX_SET_FIXTURES = [
    ("identity-2", MatrixSet.of([SymMatrix.identity(2)])),
    ("ray-2", MatrixSet.of([SymMatrix.from_rows([[1, -1], [-1, 1]])])),
    ("zero-2", MatrixSet.of([SymMatrix.zeros(2)])),
    ("zero-3", MatrixSet.of([SymMatrix.zeros(3)])),
    (
        "diag-pair-3",
        MatrixSet.of(
            [
                SymMatrix.from_rows([[0, 0, 0], [0, 0, 0], [0, 0, 1]]),
                SymMatrix.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 0]]),
            ]
        ),
    ),
    (
        "mixed-slater-2",
        MatrixSet.of(
            [SymMatrix.from_rows([[1, -1], [-1, 1]]), SymMatrix.from_rows([[1, 0], [0, 0]])]
        ),
    ),
    ("horn-5", MatrixSet.of([horn_matrix()])),
]


@pytest.fixture(scope="session")
def small_corpus():
    return matrix_set_corpus(seed=1105, size=40)
