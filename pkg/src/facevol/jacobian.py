"""Exact derivatives of squared face volumes with respect to squared edge
lengths, the collapse of the Jacobian to the incidence matrix at the regular
point, and full-rank certificates for algebraic independence.

Working in squared coordinates keeps every derivative rational. Full rank of
the squared-coordinate Jacobian at a nondegenerate point transfers to the
unsquared volume map because the two differ by diagonal scalings that are
invertible there. The only floating-point code in the package is
:func:`fd_crosscheck`, which sanity-checks the exact derivatives numerically.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .exceptions import IntegrityError
from .geometry import (
    EdgeLengthAssignment,
    _cm_constant,
    cayley_menger_matrix,
    is_nondegenerate,
    squared_volume,
    unit_regular_squared_volume,
)
from .linalg import RationalMatrix, det_fraction_free, rank
from .subsets import subsets_colex, validate_subset

RANK_TRANSFER_NOTE = (
    "ranks are of the squared-volume map in squared-length coordinates; "
    "at a nondegenerate point the unsquared map differs by invertible "
    "diagonal scalings, so full rank transfers"
)

_SAMPLE_RETRIES = 64


def _cofactor(m: RationalMatrix, i: int, j: int) -> Fraction:
    minor = RationalMatrix(
        [
            [x for c, x in enumerate(row) if c != j]
            for r, row in enumerate(m.rows)
            if r != i
        ]
    )
    return (-1) ** (i + j) * det_fraction_free(minor)


def d_sqvol_d_sqlen(
    E: EdgeLengthAssignment, face: Sequence[int], edge: Sequence[int]
) -> Fraction:
    """Exact partial of the face's squared volume w.r.t. one squared edge
    length; zero when the edge is not in the face."""
    f = validate_subset(E.n + 1, face)
    e = validate_subset(E.n + 1, edge)
    if len(f) != E.n - 1:
        raise ValueError(f"face must be an (n-1)-subset, got {f}")
    if len(e) != 2:
        raise ValueError(f"not an edge: {e}")
    if not set(e) <= set(f):
        return Fraction(0)
    cm = cayley_menger_matrix(E, f)
    a = f.index(e[0]) + 1  # +1 skips the border row/column
    b = f.index(e[1]) + 1
    # The squared length sits in the two symmetric slots (a,b) and (b,a); the
    # derivative of the determinant is the sum of the two (equal) cofactors.
    return _cm_constant(len(f) - 1) * 2 * _cofactor(cm, a, b)


def jacobian_squared_map(E: EdgeLengthAssignment) -> RationalMatrix:
    """Matrix of all squared-volume partials, faces (rows) and edges (columns)
    in colex order. Its support equals the incidence matrix."""
    if not is_nondegenerate(E):
        raise ValueError("degenerate edge-length assignment")
    faces = subsets_colex(E.n + 1, E.n - 1)
    edges = subsets_colex(E.n + 1, 2)
    rows = []
    for f in faces:
        fs = set(f)
        rows.append(
            [
                d_sqvol_d_sqlen(E, f, e) if fs.issuperset(e) else Fraction(0)
                for e in edges
            ]
        )
    return RationalMatrix(rows)


def scaled_jacobian_at_regular(n: int) -> RationalMatrix:
    """(n-1)/(2 F^2) times the squared-coordinate Jacobian at the unit regular
    point, where F^2 is the common squared codim-2 face volume there. Equals
    the 0/1 incidence matrix exactly."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    jac = jacobian_squared_map(EdgeLengthAssignment.regular(n))
    f2 = unit_regular_squared_volume(n - 2)
    return jac.scaled(Fraction(n - 1) / (2 * f2))


@dataclass(frozen=True)
class IndependenceCertificate:
    """Rank witnesses for the squared-volume Jacobian at the regular point and
    at sampled nondegenerate rational points."""

    n: int
    points: tuple[EdgeLengthAssignment, ...]
    ranks: tuple[int, ...]
    scaling_constant_squared: Fraction
    verdict: bool
    full_rank: int
    rank_transfer_note: str = field(default=RANK_TRANSFER_NOTE)


def _sample_point(n: int, rng: random.Random) -> EdgeLengthAssignment:
    # Squared lengths from {1 + k/16 : k = -2..2}: close enough to regular to
    # stay robustly realizable while keeping denominators small.
    sq = {
        e: Fraction(16 + rng.randrange(-2, 3), 16) for e in subsets_colex(n + 1, 2)
    }
    return EdgeLengthAssignment(n, sq)


def _verified_rank(jac: RationalMatrix) -> int:
    """Rank, re-verified under a reversed elimination order."""
    r = rank(jac)
    reversed_jac = RationalMatrix(
        [row[::-1] for row in jac.rows[::-1]]
    )
    if rank(reversed_jac) != r:
        raise IntegrityError("rank witness failed re-verification")
    return r


def independence_certificate(
    n: int, extra_samples: int = 0, seed: int = 0
) -> IndependenceCertificate:
    """Certify full rank of the squared-volume Jacobian at the regular point
    (and optionally at seeded random nondegenerate points)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if extra_samples < 0:
        raise ValueError("extra_samples must be >= 0")
    points = [EdgeLengthAssignment.regular(n)]
    rng = random.Random(f"{seed}:{n}")
    for _ in range(extra_samples):
        for _ in range(_SAMPLE_RETRIES):
            cand = _sample_point(n, rng)
            if is_nondegenerate(cand):
                points.append(cand)
                break
    ranks = tuple(_verified_rank(jacobian_squared_map(p)) for p in points)
    full = comb(n + 1, 2)
    f2 = unit_regular_squared_volume(n - 2)
    return IndependenceCertificate(
        n=n,
        points=tuple(points),
        ranks=ranks,
        scaling_constant_squared=4 * f2 / Fraction(n - 1) ** 2,
        verdict=any(r == full for r in ranks),
        full_rank=full,
    )


def _float_face_volume(sq: dict[tuple[int, int], float], face: Sequence[int]) -> float:
    k = len(face) - 1
    side = k + 2
    mat = np.ones((side, side))
    mat[0, 0] = 0.0
    for i, u in enumerate(face):
        for j, w in enumerate(face):
            mat[i + 1, j + 1] = 0.0 if u == w else sq[(u, w) if u < w else (w, u)]
    v2 = (-1) ** (k + 1) / (2**k * math.factorial(k) ** 2) * np.linalg.det(mat)
    return math.sqrt(max(v2, 0.0))


def fd_crosscheck(E: EdgeLengthAssignment, step: float = 1e-4) -> float:
    """Max absolute deviation between central finite differences of the
    unsquared volumes w.r.t. unsquared lengths and the exact chain-ruled
    derivatives. Second-order accurate in the step."""
    if step <= 0:
        raise ValueError("step must be positive")
    if not is_nondegenerate(E):
        raise ValueError("degenerate edge-length assignment")
    jac = jacobian_squared_map(E)
    faces = subsets_colex(E.n + 1, E.n - 1)
    edges = subsets_colex(E.n + 1, 2)
    base_sq = {e: float(v) for e, v in E.squared_lengths.items()}
    worst = 0.0
    for i, face in enumerate(faces):
        fs = set(face)
        fvol = math.sqrt(float(squared_volume(E, face)))
        for j, edge in enumerate(edges):
            if not fs.issuperset(edge):
                continue  # FD of an untouched face is exactly zero, as is the entry
            elen = math.sqrt(base_sq[edge])
            exact = elen / fvol * float(jac[i, j])
            perturbed = dict(base_sq)
            perturbed[edge] = (elen + step) ** 2
            up = _float_face_volume(perturbed, face)
            perturbed[edge] = (elen - step) ** 2
            down = _float_face_volume(perturbed, face)
            worst = max(worst, abs((up - down) / (2 * step) - exact))
    return worst
