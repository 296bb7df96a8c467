"""Verification pipeline and bit-exact report serialization.

One report per dimension n: a fixed sequence of exact checks (geometry
sanity, incidence structure, the Jacobian identity, the independence
certificate, Gram/divisor/spectrum certification, determinant consistency,
orbit-algebra checks, and a floating-point derivative cross-check), plus the
certificates themselves and the claim audit. Reports are deterministic given
(n, seed, samples) and serialize to canonical JSON (rationals as ``p/q``
strings) or a markdown summary.

Claim-audit mismatches never fail a run; only internal identity violations do.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .claims import ClaimRecord, claimed_incidence_det_abs
from .exceptions import IntegrityError
from .gelfand import EigenvectorMatch, GelfandReport, gelfand_report
from .geometry import (
    EdgeLengthAssignment,
    all_codim2_squared_volumes,
    is_nondegenerate,
    unit_regular_squared_volume,
)
from .jacobian import (
    IndependenceCertificate,
    fd_crosscheck,
    independence_certificate,
    scaled_jacobian_at_regular,
)
from .linalg import det_fraction_free, eigen_multiplicity, format_rational, parse_rational
from .spectral import (
    EigenvalueWitness,
    SingularValueEntry,
    SpectrumCertificate,
    build_gram,
    check_equitable,
    det_incidence,
    divisor_divides,
    divisor_matrix,
    full_spectrum,
    spectrum_summary,
)
from .subsets import build_incidence_matrix, orbit_partition, unrank_subset

log = logging.getLogger("facevol")

TOOL_VERSION = "0.1.0"
FD_STEP = 1e-4
FD_TOLERANCE = 1e-5
DEFAULT_N_RANGE = (4, 8)
MAX_N_GUARD = 16


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    details: str


@dataclass(frozen=True)
class VerificationReport:
    n: int
    seed: int
    samples: int
    tool_version: str
    checks: tuple[CheckResult, ...]
    spectrum: SpectrumCertificate | None
    independence: IndependenceCertificate | None
    gelfand: GelfandReport | None

    @property
    def overall_pass(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def discrepancies(self) -> tuple[ClaimRecord, ...]:
        out: tuple[ClaimRecord, ...] = ()
        if self.spectrum is not None:
            out += self.spectrum.discrepancies
        if self.gelfand is not None:
            out += self.gelfand.discrepancies
        return out


def _spectrum_n3() -> SpectrumCertificate:
    # The n = 3 Gram matrix is the identity; certify it directly.
    gram = build_gram(3)
    mult = eigen_multiplicity(gram, 1)
    det_m = det_incidence(3)
    if mult != gram.nrows or det_m * det_m != det_fraction_free(gram):
        raise IntegrityError("n=3 spectrum certification failed")
    det_abs = abs(det_m)
    record = ClaimRecord.compare(
        "absolute determinant of the incidence matrix",
        claimed_incidence_det_abs(3),
        det_abs,
    )
    return SpectrumCertificate(
        n=3,
        eigenvalues=(EigenvalueWitness(Fraction(1), mult, gram.nrows - mult),),
        singular_values=(SingularValueEntry(Fraction(1), mult),),
        det_m_abs=det_abs,
        discrepancies=(record,),
    )


def verify_single(n: int, samples: int = 3, seed: int = 42) -> VerificationReport:
    """Run every check for one dimension. Deterministic given (n, seed,
    samples); claim mismatches are recorded but do not fail."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if samples < 0:
        raise ValueError("samples must be >= 0")
    checks: list[CheckResult] = []

    def run(name: str, fn: Callable[[], tuple[bool, str]], min_n: int = 3) -> None:
        if n < min_n:
            checks.append(CheckResult(name, "skip", f"defined for n >= {min_n}"))
            return
        try:
            ok, details = fn()
        except IntegrityError as exc:
            checks.append(CheckResult(name, "fail", str(exc)))
            return
        checks.append(CheckResult(name, "pass" if ok else "fail", details))
        log.info("n=%d %s: %s", n, name, checks[-1].status)

    regular = EdgeLengthAssignment.regular(n)

    def geometry_sanity() -> tuple[bool, str]:
        f2 = unit_regular_squared_volume(n - 2)
        vols = all_codim2_squared_volumes(regular)
        ok = all(v == f2 for v in vols) and is_nondegenerate(regular)
        return ok, f"all {len(vols)} codim-2 squared volumes equal {format_rational(f2)}"

    run("geometry_sanity", geometry_sanity)

    def incidence_structure() -> tuple[bool, str]:
        m = build_incidence_matrix(n)
        deg = comb(n - 1, 2)
        ok = (
            all(x in (0, 1) for row in m.rows for x in row)
            and all(sum(row) == deg for row in m.rows)
            and all(sum(col) == deg for col in zip(*m.rows))
        )
        return ok, f"side {m.nrows}, row and column sums {deg}"

    run("incidence_structure", incidence_structure)

    def jacobian_identity() -> tuple[bool, str]:
        ok = scaled_jacobian_at_regular(n) == build_incidence_matrix(n)
        return ok, "scaled Jacobian at the regular point equals the incidence matrix"

    run("jacobian_identity", jacobian_identity)

    independence: IndependenceCertificate | None = None

    def independence_check() -> tuple[bool, str]:
        nonlocal independence
        independence = independence_certificate(n, samples, seed)
        ranks = ", ".join(str(r) for r in independence.ranks)
        return independence.verdict, f"ranks [{ranks}] of {independence.full_rank}"

    run("independence_certificate", independence_check)

    def gram_consistency() -> tuple[bool, str]:
        gram = build_gram(n)  # raises if the two constructions disagree
        return gram.is_symmetric(), f"side {gram.nrows}, both constructions agree"

    run("gram_consistency", gram_consistency)

    def equitable() -> tuple[bool, str]:
        dq = check_equitable(
            build_gram(n), orbit_partition(n, unrank_subset(n + 1, n - 1, 0))
        )
        return dq.equitable, "stabilizer orbit partition is equitable"

    run("orbit_partition_equitable", equitable, min_n=4)

    def divisor_closed() -> tuple[bool, str]:
        divisor_matrix(n)  # raises on any deviation from the closed form
        return True, "orbit quotient matches the closed-form entries"

    run("divisor_closed_form", divisor_closed, min_n=4)

    def divides() -> tuple[bool, str]:
        return divisor_divides(n), "divisor char poly divides Gram char poly"

    run("divisor_char_poly_divides", divides, min_n=4)

    spectrum: SpectrumCertificate | None = None

    def spectrum_check() -> tuple[bool, str]:
        nonlocal spectrum
        spectrum = full_spectrum(n) if n >= 4 else _spectrum_n3()
        return True, spectrum_summary(spectrum)

    run("spectrum_certificate", spectrum_check)

    def determinant() -> tuple[bool, str]:
        det_m = det_incidence(n)
        ok = det_m != 0 and det_m * det_m == det_fraction_free(build_gram(n))
        return ok, f"|det M| = {format_rational(abs(det_m))}"

    run("incidence_determinant", determinant)

    gelfand: GelfandReport | None = None
    if n >= 4:
        try:
            gelfand = gelfand_report(n)
        except IntegrityError as exc:
            checks.append(CheckResult("eigenvector_matching", "fail", str(exc)))
    if gelfand is not None:
        checks.append(
            CheckResult(
                "orbital_commutativity",
                "pass" if gelfand.commutative else "fail",
                "class indicator matrices commute",
            )
        )
        structure_ok = (
            gelfand.distinct_eigenvalues == 3
            and sum(gelfand.eigenspace_dims) == comb(n + 1, 2)
        )
        checks.append(
            CheckResult(
                "eigenspace_structure",
                "pass" if structure_ok else "fail",
                f"3 eigenspaces of dimensions {list(gelfand.eigenspace_dims)}",
            )
        )
        checks.append(
            CheckResult(
                "eigenvector_matching",
                "pass",
                "all divisor eigenvectors lift exactly",
            )
        )
    elif n < 4:
        for name in ("orbital_commutativity", "eigenspace_structure", "eigenvector_matching"):
            checks.append(CheckResult(name, "skip", "defined for n >= 4"))

    def fd_check() -> tuple[bool, str]:
        dev = fd_crosscheck(regular, FD_STEP)
        return dev <= FD_TOLERANCE, f"max deviation {dev:.3e} at step {FD_STEP:g}"

    run("fd_crosscheck", fd_check)

    return VerificationReport(
        n=n,
        seed=seed,
        samples=samples,
        tool_version=TOOL_VERSION,
        checks=tuple(checks),
        spectrum=spectrum,
        independence=independence,
        gelfand=gelfand,
    )


@dataclass(frozen=True)
class RunConfig:
    n_values: tuple[int, ...]
    samples: int = 3
    seed: int = 42
    fmt: str = "json"
    output: str | None = None
    jobs: int = 1
    max_n: int = MAX_N_GUARD

    def __post_init__(self) -> None:
        if not self.n_values:
            raise ValueError("no dimensions requested")
        if any(n < 3 for n in self.n_values):
            raise ValueError("all dimensions must be >= 3")
        if any(n > self.max_n for n in self.n_values):
            raise ValueError(
                f"dimension exceeds the guard ({self.max_n}); raise --max-n to override"
            )
        if self.samples < 0:
            raise ValueError("samples must be >= 0")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.fmt not in ("json", "markdown"):
            raise ValueError(f"unknown format {self.fmt!r}")


def _verify_args(args: tuple[int, int, int]) -> VerificationReport:
    n, samples, seed = args
    return verify_single(n, samples, seed)


def run_verification(config: RunConfig) -> list[VerificationReport]:
    """One report per requested n; parallel over n when jobs > 1. Output is
    independent of the parallelism degree."""
    work = [(n, config.samples, config.seed) for n in config.n_values]
    if config.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=min(config.jobs, len(work))) as pool:
            return list(pool.map(_verify_args, work))
    return [_verify_args(w) for w in work]


def _claim_dict(c: ClaimRecord) -> dict:
    return {
        "claim": c.claim,
        "claimed": c.claimed,
        "computed": c.computed,
        "matches": c.matches,
    }


def report_to_dict(r: VerificationReport) -> dict:
    spectrum = None
    if r.spectrum is not None:
        spectrum = {
            "n": r.spectrum.n,
            "eigenvalues": [
                {
                    "value": format_rational(w.value),
                    "multiplicity": w.multiplicity,
                    "rank_witness": w.rank_witness,
                }
                for w in r.spectrum.eigenvalues
            ],
            "singular_values": [
                {"square": format_rational(s.square), "multiplicity": s.multiplicity}
                for s in r.spectrum.singular_values
            ],
            "det_m_abs": format_rational(r.spectrum.det_m_abs),
            "discrepancies": [_claim_dict(c) for c in r.spectrum.discrepancies],
        }
    independence = None
    if r.independence is not None:
        independence = {
            "n": r.independence.n,
            "full_rank": r.independence.full_rank,
            "ranks": list(r.independence.ranks),
            "scaling_constant_squared": format_rational(
                r.independence.scaling_constant_squared
            ),
            "verdict": r.independence.verdict,
            "rank_transfer_note": r.independence.rank_transfer_note,
            "points": [p.to_json_dict() for p in r.independence.points],
        }
    gelfand = None
    if r.gelfand is not None:
        gelfand = {
            "n": r.gelfand.n,
            "commutative": r.gelfand.commutative,
            "eigenspace_dims": list(r.gelfand.eigenspace_dims),
            "claimed_dims": list(r.gelfand.claimed_dims),
            "dims_match_claimed": r.gelfand.dims_match_claimed,
            "claimed_dims_sum_matches": r.gelfand.claimed_dims_sum_matches,
            "distinct_eigenvalues": r.gelfand.distinct_eigenvalues,
            "eigenvector_matching": [
                {
                    "vector": [format_rational(x) for x in m.vector],
                    "eigenvalue": format_rational(m.eigenvalue),
                    "multiplicity": m.multiplicity,
                }
                for m in r.gelfand.matches
            ],
            "discrepancies": [_claim_dict(c) for c in r.gelfand.discrepancies],
        }
    return {
        "n": r.n,
        "seed": r.seed,
        "samples": r.samples,
        "tool_version": r.tool_version,
        "overall_pass": r.overall_pass,
        "checks": [
            {"name": c.name, "status": c.status, "details": c.details} for c in r.checks
        ],
        "spectrum": spectrum,
        "independence": independence,
        "gelfand": gelfand,
        "discrepancies": [_claim_dict(c) for c in r.discrepancies],
    }


def _claim_from_dict(d: dict) -> ClaimRecord:
    return ClaimRecord(d["claim"], d["claimed"], d["computed"], d["matches"])


def report_from_dict(d: dict) -> VerificationReport:
    spectrum = None
    if d["spectrum"] is not None:
        s = d["spectrum"]
        spectrum = SpectrumCertificate(
            n=s["n"],
            eigenvalues=tuple(
                EigenvalueWitness(
                    parse_rational(e["value"]), e["multiplicity"], e["rank_witness"]
                )
                for e in s["eigenvalues"]
            ),
            singular_values=tuple(
                SingularValueEntry(parse_rational(v["square"]), v["multiplicity"])
                for v in s["singular_values"]
            ),
            det_m_abs=parse_rational(s["det_m_abs"]),
            discrepancies=tuple(_claim_from_dict(c) for c in s["discrepancies"]),
        )
    independence = None
    if d["independence"] is not None:
        i = d["independence"]
        independence = IndependenceCertificate(
            n=i["n"],
            points=tuple(EdgeLengthAssignment.from_json_dict(p) for p in i["points"]),
            ranks=tuple(i["ranks"]),
            scaling_constant_squared=parse_rational(i["scaling_constant_squared"]),
            verdict=i["verdict"],
            full_rank=i["full_rank"],
            rank_transfer_note=i["rank_transfer_note"],
        )
    gelfand = None
    if d["gelfand"] is not None:
        g = d["gelfand"]
        gelfand = GelfandReport(
            n=g["n"],
            commutative=g["commutative"],
            eigenspace_dims=tuple(g["eigenspace_dims"]),
            claimed_dims=tuple(g["claimed_dims"]),
            dims_match_claimed=g["dims_match_claimed"],
            claimed_dims_sum_matches=g["claimed_dims_sum_matches"],
            distinct_eigenvalues=g["distinct_eigenvalues"],
            matches=tuple(
                EigenvectorMatch(
                    tuple(parse_rational(x) for x in m["vector"]),
                    parse_rational(m["eigenvalue"]),
                    m["multiplicity"],
                )
                for m in g["eigenvector_matching"]
            ),
            discrepancies=tuple(_claim_from_dict(c) for c in g["discrepancies"]),
        )
    return VerificationReport(
        n=d["n"],
        seed=d["seed"],
        samples=d["samples"],
        tool_version=d["tool_version"],
        checks=tuple(
            CheckResult(c["name"], c["status"], c["details"]) for c in d["checks"]
        ),
        spectrum=spectrum,
        independence=independence,
        gelfand=gelfand,
    )


def _md_cell(text: str) -> str:
    return text.replace("|", "\\|")


def _markdown(r: VerificationReport) -> str:
    lines = [
        f"# Verification report: n = {r.n}",
        "",
        f"- tool version: {r.tool_version}",
        f"- seed: {r.seed}, samples: {r.samples}",
        f"- overall: {'PASS' if r.overall_pass else 'FAIL'}",
        "",
        "## Checks",
        "",
        "| check | status | details |",
        "| --- | --- | --- |",
    ]
    for c in r.checks:
        lines.append(f"| {c.name} | {c.status} | {_md_cell(c.details)} |")
    if r.spectrum is not None:
        lines += [
            "",
            "## Certified spectrum",
            "",
            "| eigenvalue | multiplicity | rank witness |",
            "| --- | --- | --- |",
        ]
        for w in r.spectrum.eigenvalues:
            lines.append(
                f"| {format_rational(w.value)} | {w.multiplicity} | {w.rank_witness} |"
            )
        lines.append("")
        lines.append(f"- |det M| = {format_rational(r.spectrum.det_m_abs)}")
        squares = ", ".join(
            f"{format_rational(s.square)}:{s.multiplicity}"
            for s in r.spectrum.singular_values
        )
        lines.append(f"- singular value squares: {squares}")
    if r.independence is not None:
        ranks = ", ".join(str(x) for x in r.independence.ranks)
        lines += [
            "",
            "## Independence certificate",
            "",
            f"- full rank target: {r.independence.full_rank}",
            f"- ranks: {ranks}",
            f"- verdict: {'certified' if r.independence.verdict else 'NOT certified'}",
            "- scaling constant squared: "
            + format_rational(r.independence.scaling_constant_squared),
        ]
    discrepancies = r.discrepancies
    if discrepancies:
        lines += [
            "",
            "## Claim audit",
            "",
            "| quantity | claimed | computed | match |",
            "| --- | --- | --- | --- |",
        ]
        for c in discrepancies:
            lines.append(
                f"| {_md_cell(c.claim)} | {c.claimed} | {c.computed} | "
                f"{'yes' if c.matches else 'no'} |"
            )
    lines.append("")
    return "\n".join(lines)


def serialize_report(r: VerificationReport, fmt: str = "json") -> str:
    """Canonical rendering of one report; JSON round-trips losslessly."""
    if fmt == "json":
        return json.dumps(report_to_dict(r), indent=2) + "\n"
    if fmt == "markdown":
        return _markdown(r)
    raise ValueError(f"unknown format {fmt!r}")


def serialize_reports(reports: list[VerificationReport], fmt: str = "json") -> str:
    """One document for several reports (JSON array / concatenated markdown)."""
    if len(reports) == 1:
        return serialize_report(reports[0], fmt)
    if fmt == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"
    if fmt == "markdown":
        return "\n".join(_markdown(r) for r in reports)
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str) -> VerificationReport:
    """Inverse of serialize_report(..., "json")."""
    return report_from_dict(json.loads(text))
