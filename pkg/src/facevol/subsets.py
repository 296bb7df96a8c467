"""Colexicographic k-subset enumeration, the face-edge incidence matrix, and
vertex-stabilizer orbit partitions of the codimension-2 faces.

Vertices are labelled 1..n+1. Codimension-2 faces of an n-simplex are the
(n-1)-subsets, edges the 2-subsets; both families have C(n+1,2) members, and
all matrices index them by colex rank so every run is byte-reproducible.
"""

from __future__ import annotations

from functools import cache
from math import comb
from typing import Sequence

from .linalg import RationalMatrix

# Below n = 3 the codimension-2 faces have no edges, so the incidence
# structure is empty.
MIN_DIMENSION = 3


def validate_subset(n_total: int, s: Sequence[int]) -> tuple[int, ...]:
    """Check that s is a strictly increasing subset of 1..n_total."""
    t = tuple(s)
    if not t:
        raise ValueError("empty subset")
    if any(b <= a for a, b in zip(t, t[1:])):
        raise ValueError(f"subset must be strictly increasing: {t}")
    if t[0] < 1 or t[-1] > n_total:
        raise ValueError(f"subset {t} not contained in 1..{n_total}")
    return t


def rank_subset(n_total: int, s: Sequence[int]) -> int:
    """Colex rank of a k-subset; inverse of :func:`unrank_subset`."""
    t = validate_subset(n_total, s)
    return sum(comb(v - 1, i + 1) for i, v in enumerate(t))


def unrank_subset(n_total: int, k: int, r: int) -> tuple[int, ...]:
    """The r-th k-subset of 1..n_total in colex order."""
    if k < 1 or k > n_total:
        raise ValueError(f"invalid subset size {k} for ground set 1..{n_total}")
    if not 0 <= r < comb(n_total, k):
        raise IndexError(f"rank {r} out of range for {k}-subsets of 1..{n_total}")
    out = []
    for i in range(k, 0, -1):
        c = i - 1
        while c + 1 <= n_total - 1 and comb(c + 1, i) <= r:
            c += 1
        out.append(c + 1)
        r -= comb(c, i)
    return tuple(reversed(out))


@cache
def subsets_colex(n_total: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All k-subsets of 1..n_total, colex order (rank order)."""
    return tuple(unrank_subset(n_total, k, r) for r in range(comb(n_total, k)))


def intersection_class(a: Sequence[int], b: Sequence[int]) -> int:
    """|a ∩ b| for two subsets of equal cardinality."""
    ta, tb = tuple(a), tuple(b)
    if len(ta) != len(tb):
        raise ValueError(f"cardinality mismatch: {len(ta)} vs {len(tb)}")
    return len(set(ta) & set(tb))


@cache
def build_incidence_matrix(n: int) -> RationalMatrix:
    """0/1 matrix with rows the codim-2 faces and columns the edges, entry 1
    when the edge lies in the face. Square of side C(n+1,2)."""
    if n < MIN_DIMENSION:
        raise ValueError(f"need n >= {MIN_DIMENSION}, got {n}")
    faces = subsets_colex(n + 1, n - 1)
    edges = subsets_colex(n + 1, 2)
    rows = []
    for f in faces:
        fs = set(f)
        rows.append([1 if fs.issuperset(e) else 0 for e in edges])
    return RationalMatrix(rows)


def orbit_partition(n: int, base: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Partition of the codim-2 face ranks into the three orbits of the
    stabilizer of ``base``: the base itself, faces meeting it in n-2 vertices,
    and faces meeting it in n-3. Cell sizes are 1, 2(n-1), C(n-1,2)."""
    if n < MIN_DIMENSION:
        raise ValueError(f"need n >= {MIN_DIMENSION}, got {n}")
    b = validate_subset(n + 1, base)
    if len(b) != n - 1:
        raise ValueError(f"base must be an (n-1)-subset, got {b}")
    cells: dict[int, list[int]] = {n - 1: [], n - 2: [], n - 3: []}
    bs = set(b)
    for idx, f in enumerate(subsets_colex(n + 1, n - 1)):
        cells[len(bs & set(f))].append(idx)
    return tuple(tuple(cells[key]) for key in (n - 1, n - 2, n - 3))
