import csv
import json
import math

import pytest

from qgauss.cli.main import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, main, spectra_path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_rows(path):
    with path.open(newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--q", "0.5", "--poly", "X1^4"], 2.5),
        (["--q", "0.5", "--poly", "X1^4", "--method", "wick"], 2.5),
        (["--q", "0.3", "--poly", "X1*X2"], 0.0),
        (["--q", "1", "--poly", "X1^4", "--method", "wick"], 3.0),
        (["--q", "-0.2", "--poly", "(X1 + X2)^2", "--threads", "2", "--method", "wick"], 2.0),
    ],
)
def test_moment(capsys, argv, expected):
    code, out, _ = run_cli(capsys, "moment", *argv)

    assert code == EXIT_OK
    assert float(out) == pytest.approx(expected, abs=1e-12)


def test_moment_prints_round_trip_digits(capsys):
    code, out, _ = run_cli(capsys, "moment", "--q", "1", "--poly", "X1^4", "--method", "wick")

    assert code == EXIT_OK
    assert out == "3\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["moment", "--q", "1", "--poly", "X1^4"],
        ["moment", "--q", "1.5", "--poly", "X1^4", "--method", "wick"],
        ["norm", "--q", "0.9999", "--poly", "X1"],
        ["sweep", "--poly", "X1", "--q-from", "-1", "--q-to", "0.5", "--steps", "3"],
        ["sweep", "--poly", "X1", "--q-from", "-0.5", "--q-to", "0.5", "--steps", "1"],
        ["norm", "--q", "0.2", "--poly", "X1", "--gap", "-1"],
        ["norm", "--q", "0.2"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, _ = run_cli(capsys, *argv)

    assert code == EXIT_USAGE
    assert out == ""


def test_parse_error_reports_position(capsys):
    code, _, err = run_cli(capsys, "moment", "--q", "0.1", "--poly", "X1 X2")

    assert code == EXIT_USAGE
    assert "at position 3" in err


def test_d_may_only_be_raised(capsys):
    assert run_cli(capsys, "moment", "--q", "0.1", "--poly", "X2^2", "--d", "3")[0] == EXIT_OK
    code, _, err = run_cli(capsys, "moment", "--q", "0.1", "--poly", "X2^2", "--d", "1")
    assert code == EXIT_USAGE
    assert "dimension" in err


def test_norm_with_gap_brackets_two(capsys):
    code, out, _ = run_cli(capsys, "norm", "--q", "0", "--poly", "X1", "--gap", "0.8")

    document = json.loads(out)
    assert code == EXIT_OK
    assert document["lower"] <= 2.0 <= document["upper"]
    assert document["upper"] - document["lower"] <= 0.8
    assert document["exhausted_budget"] is False
    assert set(document) >= {"lower", "upper", "direct_upper", "n_used"}


def test_norm_fixed_n(capsys):
    code, out, _ = run_cli(capsys, "norm", "--q", "0.5", "--poly", "X1", "--n", "4")

    document = json.loads(out)
    assert code == EXIT_OK
    assert document["n_used"] == 4
    assert document["level_used"] == 8
    assert document["lower"] <= 2 / math.sqrt(0.5) <= document["upper"]


def test_norm_budget_exhausted_exit_code(capsys):
    code, out, _ = run_cli(capsys, "norm", "--q", "0.3", "--poly", "X1", "--gap", "1e-9", "--n-max", "2")

    document = json.loads(out)
    assert code == EXIT_BUDGET
    assert document["exhausted_budget"] is True
    assert document["n_used"] == 2


def test_norm_config_overlay_sets_budget(capsys, tmp_path):
    overlay = tmp_path / "tight.yaml"
    overlay.write_text("budget:\n  max_level: 2\n", encoding="utf-8")

    code, out, _ = run_cli(
        capsys, "norm", "--q", "0.3", "--poly", "X1", "--gap", "0.01", "--config", str(overlay)
    )

    assert code == EXIT_BUDGET
    assert json.loads(out)["n_used"] == 1


def test_missing_config_is_usage_error(capsys, tmp_path):
    code, _, err = run_cli(capsys, "norm", "--q", "0.3", "--poly", "X1", "--config", str(tmp_path / "none.yaml"))

    assert code == EXIT_USAGE
    assert "none.yaml" in err


def test_malformed_config_is_usage_error(capsys, tmp_path):
    overlay = tmp_path / "bad.yaml"
    overlay.write_text("budget: [1, 2\n", encoding="utf-8")

    code, out, err = run_cli(capsys, "norm", "--q", "0.2", "--poly", "X1", "--n", "1", "--config", str(overlay))

    assert code == EXIT_USAGE
    assert out == ""
    assert "bad.yaml" in err


def test_norm_csv_format(capsys):
    code, out, _ = run_cli(capsys, "norm", "--q", "0", "--poly", "X1", "--n", "2", "--format", "csv")

    header, row = out.strip().splitlines()
    assert code == EXIT_OK
    assert header.split(",")[:3] == ["q", "lower", "upper"]
    assert row.split(",")[0] == "0"


def test_spectrum_json(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--q", "0", "--poly", "X1", "--level", "3")

    document = json.loads(out)
    a, b = 2 * math.cos(math.pi / 5), 2 * math.cos(2 * math.pi / 5)
    assert code == EXIT_OK
    assert document["q"] == 0.0
    assert document["level"] == 3
    assert document["poly"] == "X1"
    assert document["eigenvalues"] == pytest.approx([-a, -b, b, a], abs=1e-10)


def test_spectrum_of_one(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--q", "0", "--poly", "1", "--level", "2")

    assert code == EXIT_OK
    assert json.loads(out)["eigenvalues"] == pytest.approx([1.0, 1.0, 1.0])


def test_spectrum_at_high_q_and_deep_level(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--q", "0.9", "--poly", "X1", "--level", "400")

    eigenvalues = json.loads(out)["eigenvalues"]
    assert code == EXIT_OK
    assert len(eigenvalues) == 401
    assert eigenvalues[-1] == pytest.approx(2 / math.sqrt(0.1), abs=0.01)


def test_spectrum_rejects_non_self_adjoint(capsys):
    code, out, err = run_cli(capsys, "spectrum", "--poly", "X1*X2")

    assert code == EXIT_USAGE
    assert out == ""
    assert "not self-adjoint" in err
    assert "X1*X2" in err


def test_spectrum_to_file_as_csv(capsys, tmp_path):
    target = tmp_path / "out" / "spectrum.csv"

    code, out, _ = run_cli(
        capsys, "spectrum", "--q", "0.2", "--poly", "X1", "--level", "4", "--format", "csv", "--out", str(target)
    )

    assert code == EXIT_OK
    assert out == ""
    lines = target.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "eigenvalue"
    assert len(lines) == 6


def test_sweep_csv(capsys, tmp_path):
    target = tmp_path / "s.csv"

    code, _, _ = run_cli(
        capsys,
        "sweep", "--poly", "X1", "--q-from", "-0.5", "--q-to", "0.5", "--steps", "11",
        "--n-max", "8", "--out", str(target),
    )

    rows = read_rows(target)
    assert code == EXIT_OK
    assert target.read_text(encoding="utf-8").splitlines()[0] == "q,lower,upper,direct_upper,n_used,level_used"
    assert len(rows) == 11
    qs = [float(row["q"]) for row in rows]
    assert qs == pytest.approx([-0.5 + 0.1 * k for k in range(11)], abs=1e-12)
    middle = rows[5]
    assert float(middle["q"]) == 0.0
    assert float(middle["lower"]) <= 2.0 <= float(middle["upper"])
    assert all(row["n_used"] == "8" and row["level_used"] == "16" for row in rows)


def test_sweep_output_is_reproducible(capsys, tmp_path):
    argv = ["sweep", "--poly", "X1*X1 - X2", "--q-from", "-0.3", "--q-to", "0.3", "--steps", "4", "--n-max", "2"]
    first, second, threaded = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"

    assert run_cli(capsys, *argv, "--threads", "1", "--out", str(first))[0] == EXIT_OK
    assert run_cli(capsys, *argv, "--threads", "1", "--out", str(second))[0] == EXIT_OK
    assert run_cli(capsys, *argv, "--threads", "4", "--out", str(threaded))[0] == EXIT_OK

    assert first.read_bytes() == second.read_bytes()
    for left, right in zip(read_rows(first), read_rows(threaded)):
        for column in ("lower", "upper", "direct_upper"):
            assert float(right[column]) == pytest.approx(float(left[column]), rel=1e-12)


def test_sweep_json_and_spectra_file(capsys, tmp_path):
    target = tmp_path / "sweep.json"

    code, _, _ = run_cli(
        capsys,
        "sweep", "--poly", "X1", "--q-from", "0", "--q-to", "0.2", "--steps", "3",
        "--n", "1", "--with-spectra", "--level", "5", "--format", "json", "--out", str(target),
    )

    assert code == EXIT_OK
    rows = json.loads(target.read_text(encoding="utf-8"))
    assert [row["q"] for row in rows] == [0.0, 0.1, 0.2]
    spectra = json.loads(spectra_path(target).read_text(encoding="utf-8"))
    assert len(spectra["spectra"]) == 3
    assert all(len(document["eigenvalues"]) == 6 for document in spectra["spectra"])
    assert len(spectra["adjacent_hausdorff"]) == 2


def test_sweep_with_spectra_needs_out(capsys):
    code, _, err = run_cli(
        capsys, "sweep", "--poly", "X1", "--q-from", "0", "--q-to", "0.2", "--steps", "3", "--with-spectra"
    )

    assert code == EXIT_USAGE
    assert "--out" in err
