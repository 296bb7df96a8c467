"""The face-edge Gram matrix, equitable partitions and their quotients, the
3x3 orbit divisor, and the fully certified spectrum of the Gram matrix.

Eigenvalue candidates come cheaply from the 3x3 divisor; the multiplicity of
each is then certified as an exact nullity of the big matrix, and the
certificate is accepted only if the multiplicities exhaust the dimension and
satisfy the trace and determinant identities. Computed values are
authoritative; disagreements with the claimed closed forms are recorded as
discrepancies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb
from typing import Sequence

from .claims import (
    ClaimRecord,
    claimed_gram_entries,
    claimed_incidence_det_abs,
    claimed_largest_divisor_eigenvalue,
    claimed_largest_singular_value,
    claimed_middle_singular_multiplicity,
    claimed_unit_singular_multiplicity,
)
from .exceptions import IntegrityError
from .linalg import (
    Polynomial,
    RationalMatrix,
    char_poly,
    det_fraction_free,
    exact_sqrt,
    format_rational,
    poly_divides,
    rank,
)
from .subsets import (
    build_incidence_matrix,
    intersection_class,
    orbit_partition,
    subsets_colex,
    unrank_subset,
)


@cache
def build_gram(n: int) -> RationalMatrix:
    """Gram matrix of the incidence rows: entry (i,j) counts the edges the
    i-th and j-th codim-2 faces share. Built both as M M^T and from the
    intersection-class rule C(|s_i ∩ s_j|, 2); the two must agree."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    m = build_incidence_matrix(n)
    gram = m @ m.transpose()
    faces = subsets_colex(n + 1, n - 1)
    by_rule = RationalMatrix(
        [[comb(intersection_class(f, g), 2) for g in faces] for f in faces]
    )
    if gram != by_rule:
        raise IntegrityError("Gram matrix disagrees with the intersection-class rule")
    return gram


@dataclass(frozen=True)
class DivisorQuotient:
    partition: tuple[tuple[int, ...], ...]
    quotient: RationalMatrix
    equitable: bool


def check_equitable(
    gram: RationalMatrix, partition: Sequence[Sequence[int]]
) -> DivisorQuotient:
    """Quotient of a weighted adjacency matrix (loops included) by a vertex
    partition, with the equitability flag: every vertex of a cell must carry
    the same total weight into each cell."""
    cells = tuple(tuple(c) for c in partition)
    seen = [v for c in cells for v in c]
    if any(not c for c in cells):
        raise ValueError("partition cells must be non-empty")
    if sorted(seen) != list(range(gram.nrows)):
        raise ValueError("partition must cover all vertex indices exactly once")
    equitable = True
    q = []
    for cell_a in cells:
        row = []
        for cell_b in cells:
            sums = {sum(gram[v, w] for w in cell_b) for v in cell_a}
            if len(sums) > 1:
                equitable = False
            row.append(sum(gram[cell_a[0], w] for w in cell_b))
        q.append(row)
    return DivisorQuotient(cells, RationalMatrix(q), equitable)


def divisor_closed_form(n: int) -> RationalMatrix:
    """Closed-form orbit-weight counts for the three stabilizer orbits; the
    computed quotient must reproduce these entries exactly."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    return RationalMatrix(
        [
            [
                Fraction((n - 2) * (n - 1), 2),
                Fraction((n - 3) * (n - 2) * (n - 1)),
                Fraction((n - 4) * (n - 3) * (n - 2) * (n - 1), 4),
            ],
            [
                Fraction((n - 3) * (n - 2), 2),
                Fraction(n**3 - 7 * n**2 + 17 * n - 14),
                Fraction(n**4 - 10 * n**3 + 39 * n**2 - 70 * n + 48, 4),
            ],
            [
                Fraction((n - 4) * (n - 3), 2),
                Fraction(n**3 - 8 * n**2 + 23 * n - 24),
                Fraction(n**4 - 10 * n**3 + 43 * n**2 - 90 * n + 76, 4),
            ],
        ]
    )


@cache
def divisor_matrix(n: int) -> RationalMatrix:
    """Equitable quotient of the Gram matrix by the stabilizer orbits of the
    first face; certified equal to the closed-form entries. Needs n >= 4 (at
    n = 3 the third orbit degenerates and the quotient is trivial)."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    base = unrank_subset(n + 1, n - 1, 0)
    dq = check_equitable(build_gram(n), orbit_partition(n, base))
    if not dq.equitable:
        raise IntegrityError(f"orbit partition is not equitable at n={n}")
    if dq.quotient != divisor_closed_form(n):
        raise IntegrityError(f"divisor quotient deviates from closed form at n={n}")
    return dq.quotient


def divisor_divides(n: int) -> bool:
    """Exact divisibility of the Gram characteristic polynomial by the
    divisor's characteristic polynomial."""
    return poly_divides(char_poly(divisor_matrix(n)), char_poly(build_gram(n)))


def divisor_eigenpairs(
    n: int,
) -> tuple[tuple[tuple[Fraction, Fraction, Fraction], Fraction], ...]:
    """The three exact (eigenvector, eigenvalue) pairs of the divisor, in
    descending eigenvalue order: C(n-1,2)^2, (n-2)^2, 1."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    return (
        ((Fraction(1), Fraction(1), Fraction(1)), Fraction(comb(n - 1, 2)) ** 2),
        (
            (Fraction(1 - n, 2), Fraction(3 - n, 4), Fraction(1)),
            Fraction((n - 2) ** 2),
        ),
        (
            (Fraction((n - 1) * (n - 2), 2), Fraction(2 - n, 2), Fraction(1)),
            Fraction(1),
        ),
    )


@dataclass(frozen=True)
class EigenvalueWitness:
    value: Fraction
    multiplicity: int
    rank_witness: int


@dataclass(frozen=True)
class SingularValueEntry:
    square: Fraction
    multiplicity: int


@dataclass(frozen=True)
class SpectrumCertificate:
    n: int
    eigenvalues: tuple[EigenvalueWitness, ...]
    singular_values: tuple[SingularValueEntry, ...]
    det_m_abs: Fraction
    discrepancies: tuple[ClaimRecord, ...]


@cache
def det_incidence(n: int) -> Fraction:
    """Exact (signed) determinant of the incidence matrix."""
    return det_fraction_free(build_incidence_matrix(n))


def _audit_claims(
    n: int,
    gram: RationalMatrix,
    largest_eigenvalue: Fraction,
    unit_multiplicity: int,
    middle_multiplicity: int,
    det_abs: Fraction,
) -> tuple[ClaimRecord, ...]:
    largest_sv = exact_sqrt(largest_eigenvalue)
    if largest_sv is None:
        raise IntegrityError("largest Gram eigenvalue is not a perfect square")
    part = orbit_partition(n, unrank_subset(n + 1, n - 1, 0))
    entries = claimed_gram_entries(n)
    return (
        ClaimRecord.compare(
            "largest singular value", claimed_largest_singular_value(n), largest_sv
        ),
        ClaimRecord.compare(
            "multiplicity of singular value n-2",
            claimed_middle_singular_multiplicity(n),
            Fraction(middle_multiplicity),
        ),
        ClaimRecord.compare(
            "multiplicity of singular value 1",
            claimed_unit_singular_multiplicity(n),
            Fraction(unit_multiplicity),
        ),
        ClaimRecord.compare(
            "absolute determinant of the incidence matrix",
            claimed_incidence_det_abs(n),
            det_abs,
        ),
        ClaimRecord.compare(
            "largest divisor eigenvalue",
            claimed_largest_divisor_eigenvalue(n),
            largest_eigenvalue,
        ),
        ClaimRecord.compare(
            "Gram entry, equal faces", entries[n - 1], gram[0, 0]
        ),
        ClaimRecord.compare(
            "Gram entry, intersection n-2", entries[n - 2], gram[0, part[1][0]]
        ),
        ClaimRecord.compare(
            "Gram entry, intersection n-3", entries[n - 3], gram[0, part[2][0]]
        ),
    )


@cache
def full_spectrum(n: int) -> SpectrumCertificate:
    """Complete certified spectrum of the Gram matrix for n >= 4.

    Candidates are the divisor eigenvalues; each multiplicity is an exact
    nullity with its rank witness. The certificate is rejected unless the
    multiplicities sum to the dimension and the trace and determinant
    identities close.
    """
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    gram = build_gram(n)
    divisor = divisor_matrix(n)
    pairs = divisor_eigenpairs(n)
    for vec, lam in pairs:
        if divisor.mul_vector(vec) != tuple(lam * x for x in vec):
            raise IntegrityError(f"divisor eigenvector check failed for {lam} at n={n}")
    lams = [lam for _, lam in pairs]
    if char_poly(divisor) != Polynomial.from_roots(lams):
        raise IntegrityError(f"divisor eigenvalues are incomplete at n={n}")
    size = gram.nrows
    witnesses = []
    for lam in lams:
        rk = rank(gram.shifted(lam))
        witnesses.append(EigenvalueWitness(lam, size - rk, rk))
    if sum(w.multiplicity for w in witnesses) != size:
        raise IntegrityError(f"multiplicities do not exhaust the spectrum at n={n}")
    if sum((w.value * w.multiplicity for w in witnesses), Fraction(0)) != gram.trace():
        raise IntegrityError(f"trace identity failed at n={n}")
    det_gram = det_fraction_free(gram)
    prod = Fraction(1)
    for w in witnesses:
        prod *= w.value**w.multiplicity
    if prod != det_gram:
        raise IntegrityError(f"eigenvalue product does not match det at n={n}")
    det_m = det_incidence(n)
    if det_m * det_m != det_gram:
        raise IntegrityError(f"incidence determinant squared mismatch at n={n}")
    det_abs = abs(det_m)
    discrepancies = _audit_claims(
        n,
        gram,
        largest_eigenvalue=witnesses[0].value,
        unit_multiplicity=witnesses[2].multiplicity,
        middle_multiplicity=witnesses[1].multiplicity,
        det_abs=det_abs,
    )
    return SpectrumCertificate(
        n=n,
        eigenvalues=tuple(witnesses),
        singular_values=tuple(
            SingularValueEntry(w.value, w.multiplicity) for w in witnesses
        ),
        det_m_abs=det_abs,
        discrepancies=discrepancies,
    )


def spectrum_summary(cert: SpectrumCertificate) -> str:
    """One-line eigenvalue:multiplicity rendering, descending."""
    return ", ".join(
        f"{format_rational(w.value)}:{w.multiplicity}" for w in cert.eigenvalues
    )
