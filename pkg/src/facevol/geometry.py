"""Cayley-Menger matrices and exact squared volumes of simplex faces.

Everything is computed over squared edge lengths so all values stay rational:
the squared k-volume of a face is a polynomial in the squared lengths of its
edges. Unsquared lengths and volumes appear only in the floating-point
cross-check of the jacobian module. Faces of dimension <= 0 are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import RationalMatrix, det_fraction_free, format_rational, parse_rational
from .subsets import MIN_DIMENSION, subsets_colex, validate_subset


@dataclass(frozen=True)
class EdgeLengthAssignment:
    """Positive squared lengths for every edge of the (n+1)-vertex simplex."""

    n: int
    squared_lengths: Mapping[tuple[int, int], Fraction]

    def __post_init__(self) -> None:
        if self.n < MIN_DIMENSION:
            raise ValueError(f"need n >= {MIN_DIMENSION}, got {self.n}")
        edges = subsets_colex(self.n + 1, 2)
        clean = {}
        for edge in edges:
            if edge not in self.squared_lengths:
                raise ValueError(f"missing squared length for edge {edge}")
            v = Fraction(self.squared_lengths[edge])
            if v <= 0:
                raise ValueError(f"squared length for edge {edge} must be positive")
            clean[edge] = v
        if len(self.squared_lengths) != len(edges):
            raise ValueError("unexpected extra edge keys")
        object.__setattr__(self, "squared_lengths", clean)

    @classmethod
    def regular(cls, n: int) -> "EdgeLengthAssignment":
        """All squared lengths 1: the unit regular simplex."""
        return cls(n, {e: Fraction(1) for e in subsets_colex(n + 1, 2)})

    def squared(self, u: int, w: int) -> Fraction:
        return self.squared_lengths[(u, w) if u < w else (w, u)]

    def with_squared(self, edge: Sequence[int], value: Fraction) -> "EdgeLengthAssignment":
        """Copy with one squared length replaced."""
        e = validate_subset(self.n + 1, edge)
        if len(e) != 2:
            raise ValueError(f"not an edge: {e}")
        new = dict(self.squared_lengths)
        new[e] = Fraction(value)
        return EdgeLengthAssignment(self.n, new)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "squared_lengths": {
                f"{i},{j}": format_rational(self.squared_lengths[(i, j)])
                for i, j in subsets_colex(self.n + 1, 2)
            },
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "EdgeLengthAssignment":
        sq = {}
        for key, val in d["squared_lengths"].items():
            i, j = (int(p) for p in key.split(","))
            sq[(i, j)] = parse_rational(val)
        return cls(int(d["n"]), sq)


def cayley_menger_matrix(E: EdgeLengthAssignment, face: Sequence[int]) -> RationalMatrix:
    """Bordered squared-distance matrix of a face: zero diagonal, ones in the
    first row and column, squared lengths elsewhere. Side |face| + 1."""
    verts = validate_subset(E.n + 1, face)
    if len(verts) < 2:
        raise ValueError(f"face needs at least 2 vertices, got {verts}")
    rows = [[Fraction(0)] + [Fraction(1)] * len(verts)]
    for u in verts:
        rows.append(
            [Fraction(1)] + [Fraction(0) if u == w else E.squared(u, w) for w in verts]
        )
    return RationalMatrix(rows)


def _cm_constant(k: int) -> Fraction:
    # squared k-volume = _cm_constant(k) * det(bordered matrix)
    return Fraction((-1) ** (k + 1), 2**k * math.factorial(k) ** 2)


def squared_volume(E: EdgeLengthAssignment, face: Sequence[int]) -> Fraction:
    """Exact squared k-volume of the face spanned by k+1 vertices."""
    verts = validate_subset(E.n + 1, face)
    if len(verts) < 2:
        raise ValueError(f"face needs at least 2 vertices, got {verts}")
    k = len(verts) - 1
    return _cm_constant(k) * det_fraction_free(cayley_menger_matrix(E, verts))


def unit_regular_squared_volume(k: int) -> Fraction:
    """Squared k-volume of the regular simplex with unit edges."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return Fraction(k + 1, 2**k * math.factorial(k) ** 2)


def all_codim2_squared_volumes(E: EdgeLengthAssignment) -> tuple[Fraction, ...]:
    """Squared (n-2)-volumes of all codim-2 faces, in colex face-rank order."""
    return tuple(squared_volume(E, f) for f in subsets_colex(E.n + 1, E.n - 1))


def is_nondegenerate(E: EdgeLengthAssignment) -> bool:
    """True iff every face of every dimension 2..n has positive squared
    volume (the assignment realizes a full-dimensional simplex).

    Checked on the nested chain {1..m}, m = 3..n+1 only: by Sylvester's
    criterion a positive chain makes the length Gram matrix positive
    definite, which realizes affinely independent points, and then every
    face is automatically positive. A failure anywhere forces some chain
    value to be nonpositive, so the chain decides the full predicate.
    """
    for m in range(3, E.n + 2):
        if squared_volume(E, tuple(range(1, m + 1))) <= 0:
            return False
    return True
