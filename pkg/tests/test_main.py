import json

import pytest

from main import build_parser, main
from settings import ReportFormatEnum, settings


def stdout_records(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines() if line]


def test_construct_then_analyze(tmp_path, capsys):
    assert main(["--output-dir", str(tmp_path), "construct", "--family", "hamming", "--q", "2", "--t", "3"]) == 0
    path = tmp_path / "hamming_q2_s1_t3.code"
    assert path.exists()
    capsys.readouterr()
    assert main(["--json", "analyze", str(path)]) == 0
    [record] = stdout_records(capsys)
    assert (record["n"], record["dim"], record["perfect"]) == (7, 4, True)
    assert record["min_distance"]["value"] == 3


def test_text_output(tmp_path, capsys):
    assert main(["--output-dir", str(tmp_path), "construct", "--family", "unital", "--q", "2", "--s", "2"]) == 0
    out = capsys.readouterr().out
    assert "n=9" in out and "dim=8" in out


def test_invalid_parameters_exit_2(capsys):
    assert main(["construct", "--family", "projective", "--q", "6", "--t", "3"]) == 2
    assert main(["construct", "--family", "projective", "--q", "2"]) == 2
    assert "invalid parameters" in capsys.readouterr().err


def test_unknown_claim_exit_2(capsys):
    assert main(["verify", "4nt", "--family", "unital", "--q", "2", "--s", "2"]) == 2
    assert "error 113" in capsys.readouterr().err


def test_verify_passing_claim(capsys):
    assert main(["--json", "verify", "min-distance", "--family", "affine", "--q", "3", "--t", "3"]) == 0
    [record] = stdout_records(capsys)
    assert record["pass"] is True
    assert record["computed"]["min_distance"] == 6


def test_known_discrepancy_keeps_exit_0(capsys):
    assert main(["--json", "verify", "scalar-twist", "--q", "5", "--t", "2"]) == 0
    [record] = stdout_records(capsys)
    assert record["pass"] is False
    assert record["expected_failure"] is True


def test_unexpected_failure_exit_1(capsys):
    assert main(["--json", "verify", "gcd-obstruction", "--q", "5", "--t", "2", "--k", "1"]) == 1
    [record] = stdout_records(capsys)
    assert record["pass"] is False


def test_verify_level(capsys):
    assert main(["--json", "verify", "2nt", "--family", "dual-repetition", "--q", "2", "--n", "4", "--level", "1"]) == 0
    [record] = stdout_records(capsys)
    assert record["params"]["level"] == 1
    assert record["computed"]["neighbour_transitive"] is True


def test_reproduce(capsys):
    assert main(["--json", "--threads", "2", "reproduce", "dichotomy"]) == 0
    records = stdout_records(capsys)
    assert [r["computed"]["branch"] for r in records] == ["large-radius", "hamming", "dual-repetition"]


def test_export(tmp_path, capsys):
    out = ["--output-dir", str(tmp_path)]
    assert main(out + ["export", "generators", "--family", "projective", "--q", "2", "--t", "3"]) == 0
    assert (tmp_path / "projective_q2_s1_t3.generators").exists()
    assert (tmp_path / "projective_q2_s1_t3.automorphisms.jsonl").exists()
    assert main(out + ["export", "pointset", "--family", "unital", "--q", "2", "--s", "2"]) == 0
    assert (tmp_path / "unital_q2_s2.points").read_text().startswith("unital 2 2 3 9")
    assert main(out + ["export", "reports", "--grid", "scalar-twist"]) == 0
    assert (tmp_path / "reports_scalar-twist.json").exists()
    assert (tmp_path / "reports_scalar-twist.csv").exists()
    assert main(out + ["export", "code", "--family", "prm", "--q", "2", "--t", "3"]) == 2


def test_parser_rejects_unknown_grid():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["reproduce", "everything"])


@pytest.mark.parametrize("expected, status", [("4", 0), ("3", 1)])
def test_verify_expected_min_distance(capsys, expected, status):
    argv = ["--json", "verify", "min-distance", "--family", "projective", "--q", "2", "--t", "3", "--l", "1"]
    assert main(argv + ["--expected", expected]) == status
    [record] = stdout_records(capsys)
    assert record["computed"]["min_distance"] == 4
    assert record["expected"] == {"min_distance": int(expected)}


@pytest.mark.parametrize("case, status", [("two-neighbour-transitive", 0), ("hamming", 1)])
def test_verify_expected_case(capsys, case, status):
    argv = ["--json", "verify", "theorem-case", "--family", "rm", "--q", "2", "--t", "3", "--l", "1"]
    assert main(argv + ["--expected-case", case]) == status
    [record] = stdout_records(capsys)
    assert record["computed"]["case"] == "two-neighbour-transitive"


@pytest.mark.parametrize("lam, status", [("1", 0), ("2", 1)])
def test_verify_expected_lambda(capsys, lam, status):
    argv = ["--json", "verify", "design", "--family", "prm", "--q", "2", "--t", "3", "--l", "1"]
    assert main(argv + ["--expected-lambda", lam]) == status
    [record] = stdout_records(capsys)
    assert record["computed"]["lambda"] == 1


def test_verify_expected_intransitivity(capsys):
    argv = ["--json", "verify", "2nt", "--family", "dual-repetition", "--q", "2", "--n", "4", "--not-transitive"]
    assert main(argv) == 0
    [record] = stdout_records(capsys)
    assert record["computed"]["neighbour_transitive"] is False
    assert record["expected"] == {"neighbour_transitive": False}


def test_report_format_setting_selects_json(monkeypatch, capsys):
    monkeypatch.setattr(settings, "report_format", ReportFormatEnum.json)
    assert main(["verify", "min-distance", "--family", "affine", "--q", "3", "--t", "3"]) == 0
    [record] = stdout_records(capsys)
    assert record["computed"]["min_distance"] == 6
