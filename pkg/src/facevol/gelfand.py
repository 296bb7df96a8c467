"""Commutativity of the intersection-class indicator algebra, eigenspace
dimension bookkeeping, and exact lifting of divisor eigenvectors.

These are the computational stand-ins for the representation-theoretic step
of the argument: the three class indicator matrices span the orbit algebra,
their commutativity plus a three-eigenvalue spectrum is the multiplicity-free
signature, and the lifted divisor eigenvectors realize the orbit-constant
eigenfunction in each eigenspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .claims import (
    ClaimRecord,
    claimed_dimension_sum_matches,
    claimed_irreducible_dimensions,
)
from .exceptions import IntegrityError
from .linalg import RationalMatrix, eigen_multiplicity, rank
from .spectral import build_gram, divisor_eigenpairs, divisor_matrix, full_spectrum
from .subsets import intersection_class, orbit_partition, subsets_colex, unrank_subset


class OrbitalMatrices(NamedTuple):
    a0: RationalMatrix
    a1: RationalMatrix
    a2: RationalMatrix


def orbital_matrices(n: int) -> OrbitalMatrices:
    """0/1 indicator matrices of the three intersection classes of codim-2
    face pairs: equality, overlap n-2, overlap n-3. They sum to all-ones."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    faces = subsets_colex(n + 1, n - 1)
    mats = []
    for target in (n - 1, n - 2, n - 3):
        mats.append(
            RationalMatrix(
                [
                    [1 if intersection_class(f, g) == target else 0 for g in faces]
                    for f in faces
                ]
            )
        )
    return OrbitalMatrices(*mats)


def check_commutative(n: int) -> bool:
    """Exact commutativity of the two non-identity class matrices; with the
    identity they generate the whole orbit algebra, so this is the full test."""
    _, a1, a2 = orbital_matrices(n)
    return a1 @ a2 == a2 @ a1


def eigenspace_dimensions(n: int) -> tuple[int, ...]:
    """Certified eigenspace dimensions of the Gram matrix, ascending."""
    cert = full_spectrum(n)
    return tuple(sorted(w.multiplicity for w in cert.eigenvalues))


@dataclass(frozen=True)
class EigenvectorMatch:
    """A divisor eigenvector, its eigenvalue, and the certified dimension of
    the Gram eigenspace it lifts into."""

    vector: tuple[Fraction, Fraction, Fraction]
    eigenvalue: Fraction
    multiplicity: int


def match_eigenvectors(n: int) -> tuple[EigenvectorMatch, ...]:
    """Verify each divisor eigenpair exactly, lift the eigenvector to a
    cell-constant vector, verify it is an exact Gram eigenvector for the same
    eigenvalue, and attach the certified multiplicity."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    gram = build_gram(n)
    divisor = divisor_matrix(n)
    partition = orbit_partition(n, unrank_subset(n + 1, n - 1, 0))
    cell_of = {}
    for cell_idx, cell in enumerate(partition):
        for v in cell:
            cell_of[v] = cell_idx
    matches = []
    lifted_rows = []
    for vec, lam in divisor_eigenpairs(n):
        if divisor.mul_vector(vec) != tuple(lam * x for x in vec):
            raise IntegrityError(f"divisor eigenpair failed for {lam} at n={n}")
        lifted = tuple(vec[cell_of[v]] for v in range(gram.nrows))
        if gram.mul_vector(lifted) != tuple(lam * x for x in lifted):
            raise IntegrityError(f"lifted eigenvector failed for {lam} at n={n}")
        lifted_rows.append(lifted)
        matches.append(EigenvectorMatch(vec, lam, eigen_multiplicity(gram, lam)))
    if rank(RationalMatrix(lifted_rows)) != 3:
        raise IntegrityError(f"lifted eigenvectors are dependent at n={n}")
    return tuple(matches)


@dataclass(frozen=True)
class GelfandReport:
    n: int
    commutative: bool
    eigenspace_dims: tuple[int, ...]
    claimed_dims: tuple[int, ...]
    dims_match_claimed: bool
    claimed_dims_sum_matches: bool
    distinct_eigenvalues: int
    matches: tuple[EigenvectorMatch, ...]
    discrepancies: tuple[ClaimRecord, ...]


def gelfand_report(n: int) -> GelfandReport:
    """Assemble the commutativity, dimension, and eigenvector-matching checks
    into one report, flagging the claimed dimension triple if it fails."""
    dims = eigenspace_dimensions(n)
    claimed = claimed_irreducible_dimensions(n)
    dims_desc = tuple(sorted(dims, reverse=True))
    record = ClaimRecord(
        claim="invariant eigenspace dimensions",
        claimed=", ".join(str(d) for d in claimed),
        computed=", ".join(str(d) for d in dims_desc),
        matches=tuple(claimed) == dims_desc,
    )
    return GelfandReport(
        n=n,
        commutative=check_commutative(n),
        eigenspace_dims=dims,
        claimed_dims=claimed,
        dims_match_claimed=record.matches,
        claimed_dims_sum_matches=claimed_dimension_sum_matches(n),
        distinct_eigenvalues=len(full_spectrum(n).eigenvalues),
        matches=match_eigenvectors(n),
        discrepancies=(record,),
    )
