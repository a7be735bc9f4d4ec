import csv
import json
import math

import pytest

from morse_spectrum import analytic, cli


def run_cli(argv):
    return cli.run(argv)


def test_spectrum_csv_extremal(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    code = run_cli(
        [
            "spectrum",
            "--family",
            "circle",
            "--t",
            "3.14159265",
            "--k",
            "4",
            "--n-per-unit",
            "600",
            "--output",
            str(out),
        ]
    )
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["k"] for r in rows] == ["1", "2", "3", "4"]
    assert abs(float(rows[0]["lambda"])) <= 1e-4
    assert float(rows[1]["lambda"]) == pytest.approx(3.0, abs=1e-3)
    assert float(rows[0]["lambda_twisted"]) == pytest.approx(3.0, abs=1e-3)


def test_curves_csv_schema(tmp_path):
    out = tmp_path / "curves.csv"
    code = run_cli(
        [
            "curves",
            "--family",
            "circle",
            "--t-min",
            "0.5",
            "--t-max",
            "4",
            "--steps",
            "6",
            "--k",
            "2",
            "--n-per-unit",
            "100",
            "--output",
            str(out),
        ]
    )
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert {r["kind"] for r in rows} == {"dirichlet", "twisted"}
    assert len(rows) == 2 * 2 * 6
    header = out.read_text().splitlines()[0]
    assert header == "t,kind,k,value"


def test_events_csv(tmp_path):
    out = tmp_path / "events.csv"
    code = run_cli(
        [
            "events",
            "--family",
            "circle",
            "--t-min",
            "2.5",
            "--t-max",
            "7",
            "--steps",
            "24",
            "--k",
            "1",
            "--n-per-unit",
            "200",
            "--output",
            str(out),
        ]
    )
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    kinds = {r["kind"] for r in rows}
    assert kinds == {"dirichlet", "twisted"}
    d = [r for r in rows if r["kind"] == "dirichlet"][0]
    assert float(d["t_star"]) == pytest.approx(math.pi, abs=1e-3)
    tw = [r for r in rows if r["kind"] == "twisted"][0]
    assert float(tw["t_star"]) == pytest.approx(2 * math.pi, abs=1e-3)
    assert out.read_text().splitlines()[0] == "t_star,kind,k,multiplicity,width"


def test_verify_json_and_determinism(tmp_path):
    args = [
        "verify",
        "--family",
        "circle",
        "--t-min",
        "0.5",
        "--t-max",
        "10",
        "--steps",
        "40",
        "--k",
        "3",
        "--n-per-unit",
        "150",
    ]
    out = tmp_path / "report.json"
    assert run_cli(args + ["--output", str(out)]) == 0
    b1 = out.read_bytes()
    assert run_cli(args + ["--output", str(out)]) == 0
    b2 = out.read_bytes()
    assert b1 == b2
    doc = json.loads(b1)
    assert doc["config"]["family"] == "circle"
    assert doc["config"]["n_per_unit"] == 150
    names = {c["name"] for c in doc["checks"]}
    assert {"morse_identity", "lemma_d", "interlacing", "monotone", "theorem_j"} <= names
    assert all(c["ok"] or c["expected_failure"] for c in doc["checks"])
    assert len(doc["curve"]["t_samples"]) == 40


def test_verify_threads_env_equivalent(tmp_path, monkeypatch):
    args = [
        "curves",
        "--family",
        "circle",
        "--t-min",
        "1",
        "--t-max",
        "5",
        "--steps",
        "9",
        "--k",
        "2",
        "--n-per-unit",
        "120",
    ]
    seq, par = tmp_path / "seq.csv", tmp_path / "par.csv"
    monkeypatch.setenv("MORSE_SPECTRUM_THREADS", "1")
    assert run_cli(args + ["--output", str(seq)]) == 0
    monkeypatch.setenv("MORSE_SPECTRUM_THREADS", "3")
    assert run_cli(args + ["--output", str(par)]) == 0
    assert seq.read_bytes() == par.read_bytes()


def test_oracle_psi_zeros(capsys):
    assert run_cli(["oracle", "psi-zeros", "--count", "6"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    vals = [float(x) for x in lines]
    assert len(vals) == 6
    assert vals[0] == pytest.approx(2 * math.pi, rel=1e-12)
    assert vals[2] == pytest.approx(4 * math.pi, rel=1e-12)
    assert vals[4] == pytest.approx(6 * math.pi, rel=1e-12)


def test_oracle_values(capsys):
    assert run_cli(["oracle", "circle-lambda", "--k", "2", "--t", str(math.pi)]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(3.0)
    assert run_cli(["oracle", "bessel-zero", "--m", "0", "--n", "1"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(2.404825557695773, abs=1e-10)
    assert run_cli(["oracle", "gap-lambda1", "--t", "1.0"]) == 0
    assert float(capsys.readouterr().out) == 0.25
    assert run_cli(["oracle", "twisted-lambda", "--k", "1", "--t", "6.283185307179586"]) == 0
    assert abs(float(capsys.readouterr().out)) <= 1e-12


def test_usage_errors(capsys):
    assert run_cli(["spectrum", "--family", "klein", "--t", "1"]) == 2
    assert run_cli(["spectrum", "--family", "circle"]) == 2  # missing --t
    assert run_cli(["nonsense"]) == 2
    assert run_cli(["spectrum", "--family", "circle", "--t", "1", "--n-per-unit", "10"]) == 2
    # sphere cap beyond pi is a geometry (input) error
    assert run_cli(["spectrum", "--family", "sphere", "--t", "3.5"]) == 2
    capsys.readouterr()


def test_oracle_bad_input(capsys):
    assert run_cli(["oracle", "gap-lambda1", "--t", "1.5"]) == 2
    err = capsys.readouterr().err
    assert "error" in err


def test_plot_svg(tmp_path):
    curves = tmp_path / "c.csv"
    events = tmp_path / "e.csv"
    run_cli(
        [
            "curves", "--family", "circle", "--t-min", "2", "--t-max", "8",
            "--steps", "12", "--k", "2", "--n-per-unit", "120",
            "--output", str(curves),
        ]
    )
    run_cli(
        [
            "events", "--family", "circle", "--t-min", "2", "--t-max", "8",
            "--steps", "12", "--k", "2", "--n-per-unit", "120", "--no-refine",
            "--output", str(events),
        ]
    )
    svg = tmp_path / "plot.svg"
    code = run_cli(
        ["plot", "--curves", str(curves), "--events", str(events), "--output", str(svg)]
    )
    assert code == 0
    text = svg.read_text()
    assert text.startswith("<svg")
    assert 'width="800" height="500"' in text
    assert "polyline" in text
    assert "circle" in text  # event markers
    assert "stroke-dasharray" in text  # zero-axis rule


def test_analytic_reexport_matches_cli_oracle(capsys):
    run_cli(["oracle", "psi", "--t", str(math.pi)])
    assert float(capsys.readouterr().out) == pytest.approx(float(analytic.psi(math.pi)))
