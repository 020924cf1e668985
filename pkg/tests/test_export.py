import io
import json

import pytest

from qgauss.export import Exporter, format_number
from qgauss.spectra import SpectrumEstimate, SweepRow


def test_sweep_table_uses_round_trip_digits():
    rows = [
        SweepRow(q=-0.1, lower=1.0, upper=2.0 / 3.0, direct_upper=2.5, n_used=4, level_used=8),
        SweepRow(q=0.0, lower=0.1, upper=0.2, direct_upper=0.3, n_used=1, level_used=2),
    ]

    text = Exporter().sweep_table(rows)

    lines = text.splitlines()
    assert lines[0] == "q,lower,upper,direct_upper,n_used,level_used"
    assert lines[1] == "-0.10000000000000001,1,0.66666666666666663,2.5,4,8"
    assert lines[2].startswith("0,0.10000000000000001,")
    assert text.endswith("\n")
    assert float(lines[1].split(",")[2]) == 2.0 / 3.0


def test_write_to_stream_or_file(tmp_path):
    stream = io.StringIO()
    exporter = Exporter(stream)

    assert exporter.write("abc\n") is None
    destination = exporter.write("xyz\n", tmp_path / "nested" / "out.txt")

    assert stream.getvalue() == "abc\n"
    assert destination.read_text(encoding="utf-8") == "xyz\n"


def test_spectrum_export(tmp_path):
    estimate = SpectrumEstimate(eigenvalues=(-1.5, 0.25, 1.5), level=2, q=0.1, poly_text="X1 + X2")
    exporter = Exporter()

    json_path = exporter.export_spectrum(estimate, path=tmp_path / "s.json")
    csv_path = exporter.export_spectrum(estimate, format="csv", path=tmp_path / "s.csv")

    assert json.loads(json_path.read_text(encoding="utf-8")) == {
        "q": 0.1,
        "level": 2,
        "poly": "X1 + X2",
        "eigenvalues": [-1.5, 0.25, 1.5],
    }
    assert csv_path.read_text(encoding="utf-8") == "eigenvalue\n-1.5\n0.25\n1.5\n"
    assert format_number(0.1) == "0.10000000000000001"


def test_json_document_writes_seventeen_digit_floats():
    document = {"q": 0.1, "n_used": 2, "ok": False, "label": "X1", "values": [2.0 / 3.0, -0.5], "empty": []}

    text = Exporter().json_document(document)

    assert text == (
        "{\n"
        '  "q": 0.10000000000000001,\n'
        '  "n_used": 2,\n'
        '  "ok": false,\n'
        '  "label": "X1",\n'
        '  "values": [\n'
        "    0.66666666666666663,\n"
        "    -0.5\n"
        "  ],\n"
        '  "empty": []\n'
        "}\n"
    )
    assert json.loads(text) == document


def test_json_document_rejects_non_finite():
    with pytest.raises(ValueError):
        Exporter().json_document({"upper": float("inf")})
