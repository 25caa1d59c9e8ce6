import json
import os
import subprocess
import sys
from pathlib import Path

from omnilie.cli import main
from omnilie import serialize
from omnilie.atiyah import AtiyahForm

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def write_scenario(tmp_path, **overrides):
    scenario = {
        "n": 2,
        "suites": ["atiyah-calculus"],
        "samples": 3,
        "seed": 11,
        "max_degree": 1,
        "coeff_bound": 2,
    }
    scenario.update(overrides)
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(scenario), encoding="utf-8")
    return path


def test_verify_passing_scenario(tmp_path, capsys):
    scenario = write_scenario(tmp_path)
    report = tmp_path / "report.json"
    rc = main(["verify", "--scenario", str(scenario), "--report", str(report)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "PASS atiyah-calculus" in out
    payload = json.loads(report.read_text(encoding="utf-8"))
    assert payload["all_passed"] is True
    assert payload["results"][0]["suite"] == "atiyah-calculus"
    assert set(payload["results"][0]) == {"suite", "case_index", "n", "residual_is_zero"}


def test_verify_reports_are_byte_identical(tmp_path):
    scenario = write_scenario(tmp_path, suites=["lcourant-axioms", "jacobi"])
    r1 = tmp_path / "r1.json"
    r2 = tmp_path / "r2.json"
    assert main(["verify", "--scenario", str(scenario), "--report", str(r1)]) == 0
    assert main(["verify", "--scenario", str(scenario), "--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_verify_thread_env_does_not_change_report(tmp_path):
    scenario = write_scenario(tmp_path, suites=["atiyah-calculus", "exact-curvature"])
    r1 = tmp_path / "r1.json"
    r2 = tmp_path / "r2.json"
    old = os.environ.get("VERIFY_THREADS")
    try:
        os.environ["VERIFY_THREADS"] = "0"
        assert main(["verify", "--scenario", str(scenario), "--report", str(r1)]) == 0
        os.environ["VERIFY_THREADS"] = "4"
        assert main(["verify", "--scenario", str(scenario), "--report", str(r2)]) == 0
    finally:
        if old is None:
            os.environ.pop("VERIFY_THREADS", None)
        else:
            os.environ["VERIFY_THREADS"] = old
    assert r1.read_bytes() == r2.read_bytes()


def test_verify_sabotage_exits_one_with_witness(tmp_path):
    scenario = write_scenario(
        tmp_path, suites=["linf-oracle"], samples=2, sabotage="drop-l3"
    )
    report = tmp_path / "report.json"
    rc = main(["verify", "--scenario", str(scenario), "--report", str(report)])
    assert rc == 1
    payload = json.loads(report.read_text(encoding="utf-8"))
    failing = [e for e in payload["results"] if not e["residual_is_zero"]]
    assert failing and "witness" in failing[0]
    assert "residual" in failing[0]["witness"]


def test_verify_rejects_bad_scenarios(tmp_path, capsys):
    cases = [
        ({"suites": []}, "suites"),
        ({"suites": ["nope"]}, "nope"),
        ({"n": 0}, "n:"),
        ({"samples": 0}, "samples"),
        ({"suites": ["morphism-5-9"], "n": 1}, "morphism-5-9"),
        ({"sabotage": "zap"}, "sabotage"),
    ]
    for overrides, needle in cases:
        scenario = write_scenario(tmp_path, **overrides)
        rc = main(["verify", "--scenario", str(scenario), "--report", str(tmp_path / "r.json")])
        err = capsys.readouterr().err
        assert rc == 2, overrides
        assert needle in err


def test_verify_rejects_bad_forms(tmp_path, capsys):
    bad_degree = {
        "omega": {"degree": 9, "coeffs": []},
    }
    scenario = write_scenario(tmp_path, forms=bad_degree)
    rc = main(["verify", "--scenario", str(scenario), "--report", str(tmp_path / "r.json")])
    assert rc == 2
    assert "forms.omega" in capsys.readouterr().err


def test_verify_accepts_explicit_twist(tmp_path):
    omega = AtiyahForm.basis(2, (0, 1, 2)).scale(2)
    scenario = write_scenario(
        tmp_path,
        suites=["lcourant-axioms", "exact-curvature"],
        forms={"omega": serialize.form_to_obj(omega)},
    )
    rc = main(["verify", "--scenario", str(scenario), "--report", str(tmp_path / "r.json")])
    assert rc == 0


def test_verify_accepts_named_b_and_theta(tmp_path):
    from omnilie.atiyah import random_form
    import random as _random

    rng = _random.Random(0)
    theta = random_form(2, 2, rng, 1, 2)
    b_form = random_form(2, 2, rng, 1, 2)
    scenario = write_scenario(
        tmp_path,
        suites=["exact-curvature", "cohomologous-iso"],
        samples=2,
        forms={
            "theta": serialize.form_to_obj(theta),
            "B": serialize.form_to_obj(b_form),
        },
    )
    assert main(["verify", "--scenario", str(scenario), "--report", str(tmp_path / "r.json")]) == 0


def test_verify_rejects_degenerate_twist_for_graph_suites(tmp_path, capsys):
    scenario = write_scenario(
        tmp_path,
        suites=["dg-leibniz"],
        forms={"omega": serialize.form_to_obj(AtiyahForm.zero(2, 3))},
    )
    rc = main(["verify", "--scenario", str(scenario), "--report", str(tmp_path / "r.json")])
    assert rc == 2
    assert "nondegenerate" in capsys.readouterr().err


def test_verify_text_format(tmp_path):
    scenario = write_scenario(tmp_path)
    report = tmp_path / "report.txt"
    rc = main(
        [
            "verify",
            "--scenario",
            str(scenario),
            "--report",
            str(report),
            "--format",
            "text",
        ]
    )
    assert rc == 0
    text = report.read_text(encoding="utf-8")
    assert "PASS atiyah-calculus" in text and "total:" in text


def test_demo_outputs(capsys):
    assert main(["demo", "canonical-p1"]) == 0
    out = capsys.readouterr().out
    assert "{x1, 1} = -1" in out
    assert main(["demo", "canonical-p2"]) == 0
    out = capsys.readouterr().out
    assert "kappa(2) = +1" in out and "kappa(3) = -1" in out
    assert main(["demo", "acyclicity"]) == 0
    out = capsys.readouterr().out
    assert "primitive(e(inf)) = 1" in out
    assert main(["demo", "not-a-demo"]) == 2
    assert "unknown demo" in capsys.readouterr().err


def test_primitive_command(tmp_path, capsys):
    form = {"n": 2, **serialize.form_to_obj(AtiyahForm.basis(2, (0, 1, 2)))}
    path = tmp_path / "form.json"
    path.write_text(json.dumps(form), encoding="utf-8")
    rc = main(["primitive", "--form", str(path)])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    got = serialize.form_from_obj(2, payload)
    assert got == AtiyahForm.basis(2, (0, 1))

    from omnilie.scalar import Scalar

    not_closed = {
        "n": 3,
        **serialize.form_to_obj(
            AtiyahForm(3, 3, {(0, 1, 3): Scalar.variable(3, 3)})
        ),
    }
    path2 = tmp_path / "bad.json"
    path2.write_text(json.dumps(not_closed), encoding="utf-8")
    assert main(["primitive", "--form", str(path2)]) == 2
    assert "not closed" in capsys.readouterr().err


def test_console_entry_point_subprocess(tmp_path):
    scenario = write_scenario(tmp_path, suites=["gauge"], samples=2)
    report = tmp_path / "r.json"
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "omnilie.cli",
            "verify",
            "--scenario",
            str(scenario),
            "--report",
            str(report),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "PASS gauge" in proc.stdout


def test_shipped_scenario_is_valid_json():
    path = SCENARIOS / "all-suites.json"
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert payload["suites"] == "all"
    assert payload["n"] <= 2 and payload["max_degree"] <= 2
