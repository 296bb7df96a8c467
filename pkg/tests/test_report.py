import json

import pytest

import facevol.report as report_mod
from facevol.cli import main
from facevol.report import (
    RunConfig,
    parse_report,
    run_verification,
    serialize_report,
    serialize_reports,
    verify_single,
)


@pytest.fixture(scope="module")
def report_n4():
    return verify_single(4, samples=3, seed=42)


class TestPipeline:
    def test_n4_all_pass(self, report_n4):
        assert report_n4.overall_pass
        assert {c.status for c in report_n4.checks} == {"pass"}
        names = [c.name for c in report_n4.checks]
        assert names[0] == "geometry_sanity"
        assert "jacobian_identity" in names
        assert "independence_certificate" in names
        assert "fd_crosscheck" in names

    def test_n4_certificates(self, report_n4):
        assert report_n4.spectrum.det_m_abs == 48
        assert report_n4.independence.ranks == (10, 10, 10, 10)
        assert report_n4.gelfand.commutative

    def test_discrepancies_do_not_fail(self, report_n4):
        assert any(not c.matches for c in report_n4.discrepancies)
        assert report_n4.overall_pass

    def test_n3_skips_divisor_checks(self):
        rep = verify_single(3, samples=1, seed=1)
        assert rep.overall_pass
        by_name = {c.name: c for c in rep.checks}
        assert by_name["orbit_partition_equitable"].status == "skip"
        assert by_name["orbital_commutativity"].status == "skip"
        assert by_name["spectrum_certificate"].status == "pass"
        assert rep.gelfand is None
        assert rep.spectrum.det_m_abs == 1

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            verify_single(2)
        with pytest.raises(ValueError):
            verify_single(4, samples=-1)

    def test_integrity_failure_is_recorded_not_raised(self, monkeypatch):
        monkeypatch.setattr(report_mod, "divisor_divides", lambda n: False)
        rep = verify_single(4, samples=0, seed=0)
        by_name = {c.name: c for c in rep.checks}
        assert by_name["divisor_char_poly_divides"].status == "fail"
        assert not rep.overall_pass


class TestSerialization:
    def test_json_roundtrip(self, report_n4):
        text = serialize_report(report_n4, "json")
        assert parse_report(text) == report_n4

    def test_json_roundtrip_n3(self):
        rep = verify_single(3, samples=0, seed=0)
        assert parse_report(serialize_report(rep, "json")) == rep

    def test_pinned_singular_values_n4(self, report_n4):
        doc = json.loads(serialize_report(report_n4, "json"))
        assert doc["spectrum"]["singular_values"] == [
            {"square": "9", "multiplicity": 1},
            {"square": "4", "multiplicity": 4},
            {"square": "1", "multiplicity": 5},
        ]
        assert doc["spectrum"]["det_m_abs"] == "48"
        assert doc["independence"]["scaling_constant_squared"] == "1/12"

    def test_rationals_serialized_as_strings(self, report_n4):
        doc = json.loads(serialize_report(report_n4, "json"))
        point = doc["independence"]["points"][1]
        for value in point["squared_lengths"].values():
            assert isinstance(value, str)

    def test_markdown_summary(self, report_n4):
        text = serialize_report(report_n4, "markdown")
        assert "# Verification report: n = 4" in text
        assert "| quantity | claimed | computed | match |" in text
        assert "| largest singular value | 6 | 3 | no |" in text
        assert "overall: PASS" in text

    def test_unknown_format_rejected(self, report_n4):
        with pytest.raises(ValueError):
            serialize_report(report_n4, "yaml")


class TestDeterminism:
    def test_same_config_same_bytes(self):
        a = serialize_report(verify_single(4, samples=2, seed=11), "json")
        b = serialize_report(verify_single(4, samples=2, seed=11), "json")
        assert a == b

    def test_jobs_do_not_change_output(self):
        base = RunConfig(n_values=(4, 5), samples=1, seed=3, jobs=1)
        parallel = RunConfig(n_values=(4, 5), samples=1, seed=3, jobs=2)
        text1 = serialize_reports(run_verification(base), "json")
        text2 = serialize_reports(run_verification(parallel), "json")
        assert text1 == text2


class TestRunConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            RunConfig(n_values=())
        with pytest.raises(ValueError):
            RunConfig(n_values=(2,))
        with pytest.raises(ValueError):
            RunConfig(n_values=(4,), samples=-1)
        with pytest.raises(ValueError):
            RunConfig(n_values=(4,), jobs=0)
        with pytest.raises(ValueError):
            RunConfig(n_values=(17,))
        with pytest.raises(ValueError):
            RunConfig(n_values=(4,), fmt="xml")

    def test_guard_override(self):
        cfg = RunConfig(n_values=(17,), max_n=20)
        assert cfg.n_values == (17,)


class TestCli:
    def test_single_n_exit_zero(self, capsys):
        assert main(["--n", "4", "--seed", "42"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["n"] == 4
        assert doc["overall_pass"] is True
        assert doc["spectrum"]["det_m_abs"] == "48"

    def test_usage_error_small_n(self, capsys):
        assert main(["--n", "2"]) == 2
        assert "error" in capsys.readouterr().err

    def test_usage_error_bad_range(self, capsys):
        assert main(["--n-range", "6-4"]) == 2
        assert main(["--n-range", "6:4"]) == 2

    def test_usage_error_guard(self, capsys):
        assert main(["--n", "17"]) == 2
        assert main(["--n", "6", "--max-n", "5"]) == 2
        assert main(["--n", "6", "--max-n", "6", "--samples", "0"]) == 0

    def test_argparse_failure_maps_to_two(self, capsys):
        assert main(["--n", "notanint"]) == 2

    def test_check_failure_exits_one(self, capsys, monkeypatch):
        monkeypatch.setattr(report_mod, "divisor_divides", lambda n: False)
        assert main(["--n", "4", "--samples", "0"]) == 1

    def test_output_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["--n", "4", "--output", str(out)]) == 0
        assert json.loads(out.read_text())["n"] == 4

    def test_range_output_dir(self, tmp_path):
        outdir = tmp_path / "reports"
        code = main(
            ["--n-range", "4:5", "--samples", "0", "--output", str(outdir)]
        )
        assert code == 0
        assert sorted(p.name for p in outdir.iterdir()) == [
            "verify_n4.json",
            "verify_n5.json",
        ]

    def test_single_element_range_still_writes_dir(self, tmp_path):
        outdir = tmp_path / "reports"
        assert main(["--n-range", "4:4", "--samples", "0", "--output", str(outdir)]) == 0
        assert [p.name for p in outdir.iterdir()] == ["verify_n4.json"]

    def test_markdown_to_stdout(self, capsys):
        assert main(["--n", "4", "--format", "markdown"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("# Verification report: n = 4")

    def test_range_stdout_is_json_array(self, capsys):
        assert main(["--n-range", "4:5", "--samples", "0"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert [r["n"] for r in doc] == [4, 5]
