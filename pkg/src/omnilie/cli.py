"""Batch verification harness.

Subcommands:

* ``verify --scenario <path> [--report <path>] [--format json|text]``
  runs the named suites against a scenario file and writes a
  deterministic report; exit code 0 when every residual is zero, 1 on
  any identity failure, 2 on malformed input.
* ``demo <name>`` prints a fixed walkthrough.
* ``primitive --form <path>`` reads a serialized closed form and prints
  a primitive for it.

``VERIFY_THREADS`` caps suite-level concurrency (0 or 1 = sequential);
results are aggregated in scenario order so the report does not depend
on the thread count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import (
    Degenerate,
    NonInvertible,
    NotClosed,
    NotHamiltonian,
    UnknownDemo,
)
from .scalar import Scalar
from .atiyah import AtiyahForm, differential, primitive
from .jacobi import JacobiBiderivation, jacobi_bracket
from .linf import kappa
from . import serialize
from .suites import SUITES, SuiteContext


class ScenarioError(ValueError):
    """Malformed scenario input; the message names the offending field."""


def _require(condition, message):
    if not condition:
        raise ScenarioError(message)


def load_scenario(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ScenarioError(f"scenario: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario: invalid JSON: {exc}") from exc
    _require(isinstance(raw, dict), "scenario: top level must be an object")

    n = raw.get("n")
    _require(isinstance(n, int) and n >= 1, "n: must be an integer >= 1")
    suites = raw.get("suites")
    if suites == "all":
        suites = list(SUITES)
    _require(
        isinstance(suites, list) and suites, "suites: must be a non-empty list"
    )
    for name in suites:
        _require(name in SUITES, f"suites: unknown suite {name!r}")
        spec = SUITES[name]
        _require(
            n >= spec.min_n,
            f"suites: {name} needs n >= {spec.min_n} (got {n})",
        )
        if spec.max_n is not None:
            _require(
                n <= spec.max_n,
                f"suites: {name} needs n <= {spec.max_n} (got {n})",
            )
    samples = raw.get("samples", 10)
    _require(
        isinstance(samples, int) and samples >= 1, "samples: must be an integer >= 1"
    )
    seed = raw.get("seed", 0)
    _require(isinstance(seed, int), "seed: must be an integer")
    max_degree = raw.get("max_degree", 2)
    _require(
        isinstance(max_degree, int) and max_degree >= 0,
        "max_degree: must be a nonnegative integer",
    )
    coeff_bound = raw.get("coeff_bound", 3)
    _require(
        isinstance(coeff_bound, int) and coeff_bound >= 1,
        "coeff_bound: must be a positive integer",
    )
    sabotage = raw.get("sabotage")
    _require(
        sabotage in (None, "drop-l3"),
        "sabotage: only 'drop-l3' is recognized",
    )

    forms = {}
    for name, obj in (raw.get("forms") or {}).items():
        try:
            form = serialize.form_from_obj(n, obj)
        except (ValueError, KeyError, TypeError) as exc:
            raise ScenarioError(f"forms.{name}: {exc}") from exc
        _require(
            0 <= form.degree <= n + 1,
            f"forms.{name}: degree {form.degree} outside 0..{n + 1}",
        )
        forms[name] = form
    twist_suites = {
        "lcourant-axioms",
        "linf-oracle",
        "morphism-5-9",
        "observables",
        "useful-lemma",
        "dg-leibniz",
        "exact-curvature",
        "cohomologous-iso",
    }
    if "omega" in forms and twist_suites & set(suites):
        _require(
            forms["omega"].degree == 3,
            f"forms.omega: the twist must have degree 3 (got {forms['omega'].degree})",
        )
        _require(
            differential(forms["omega"]).is_zero(),
            "forms.omega: the twist must be closed",
        )
        if {"morphism-5-9", "dg-leibniz"} & set(suites):
            from .observables import graph_of_form
            from . import linalg

            xi = graph_of_form(forms["omega"])
            _require(
                linalg.rank(xi._form_matrix()) == n + 1,
                "forms.omega: the twist must be nondegenerate for the graph suites",
            )
    for name, degree in (("B", 2), ("theta", 2)):
        if name in forms:
            _require(
                forms[name].degree == degree,
                f"forms.{name}: expected degree {degree} (got {forms[name].degree})",
            )

    ctx = SuiteContext(
        n=n,
        samples=samples,
        seed=seed,
        max_degree=max_degree,
        coeff_bound=coeff_bound,
        forms=forms,
        sabotage=sabotage,
    )
    return suites, ctx, raw


def _thread_count():
    value = os.environ.get("VERIFY_THREADS", "0")
    try:
        return max(0, int(value))
    except ValueError:
        return 0


def run_suites(suite_names, ctx):
    """Execute the suites, returning report entries in scenario order."""

    def run_one(name):
        return SUITES[name].runner(ctx)

    threads = _thread_count()
    if threads > 1 and len(suite_names) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, suite_names))
    else:
        results = [run_one(name) for name in suite_names]

    entries = []
    for name, cases in zip(suite_names, results):
        for index, (label, ok, witness) in enumerate(cases):
            entry = {
                "suite": name,
                "case_index": index,
                "n": ctx.n,
                "residual_is_zero": bool(ok),
            }
            if not ok:
                entry["witness"] = {"label": label, **(witness or {})}
            entries.append(entry)
    return entries


def render_report(entries, scenario_raw):
    suites_summary = {}
    for entry in entries:
        bucket = suites_summary.setdefault(
            entry["suite"], {"cases": 0, "failures": 0}
        )
        bucket["cases"] += 1
        if not entry["residual_is_zero"]:
            bucket["failures"] += 1
    failures = sum(1 for e in entries if not e["residual_is_zero"])
    return {
        "scenario": scenario_raw,
        "results": entries,
        "summary": {
            "total_cases": len(entries),
            "failures": failures,
            "suites": suites_summary,
        },
        "all_passed": failures == 0,
    }


def report_text(report):
    lines = []
    for suite, bucket in sorted(report["summary"]["suites"].items()):
        status = "PASS" if bucket["failures"] == 0 else "FAIL"
        lines.append(
            f"{status} {suite}: {bucket['cases'] - bucket['failures']}/{bucket['cases']} cases"
        )
    for entry in report["results"]:
        if not entry["residual_is_zero"]:
            witness = entry.get("witness", {})
            lines.append(
                f"  failure {entry['suite']}[{entry['case_index']}] "
                f"{witness.get('label', '')}: {json.dumps(witness, sort_keys=True)}"
            )
    lines.append(
        f"total: {report['summary']['total_cases']} cases, "
        f"{report['summary']['failures']} failures"
    )
    return "\n".join(lines) + "\n"


def cmd_verify(args):
    try:
        suite_names, ctx, raw = load_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    try:
        entries = run_suites(suite_names, ctx)
    except (NotClosed, Degenerate, NotHamiltonian, NonInvertible) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    report = render_report(entries, raw)
    if args.format == "json":
        payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        payload = report_text(report)
    with open(args.report, "w", encoding="utf-8") as handle:
        handle.write(payload)
    sys.stdout.write(report_text(report))
    sys.stdout.write(f"report written to {args.report}\n")
    return 0 if report["all_passed"] else 1


def _demo_canonical_p1():
    lines = ["order-1 canonical bracket, one variable"]
    omega = AtiyahForm.basis(1, (0, 1))
    J = JacobiBiderivation.from_closed_form(omega)
    x = Scalar.variable(1, 1)
    one = Scalar.one(1)
    table = [("x1", x), ("1", one), ("x1^2", x * x)]
    for name_a, a in table:
        for name_b, b in table:
            lines.append(f"{{{name_a}, {name_b}}} = {jacobi_bracket(J, a, b)}")
    return "\n".join(lines)


def _demo_canonical_p2():
    from .linf import GradedElement, build_graph_linf
    from .observables import graph_of_form, hamiltonian_form

    lines = ["order-2 graph observables, two variables"]
    for k in (2, 3, 4, 5):
        lines.append(f"kappa({k}) = {kappa(k):+d}")
    omega = AtiyahForm.basis(2, (0, 1, 2))
    structure = build_graph_linf(omega)
    xi = graph_of_form(omega)
    x2 = Scalar.variable(2, 2)
    a = hamiltonian_form(AtiyahForm(2, 1, {(0,): x2}), xi)
    b = hamiltonian_form(AtiyahForm.basis(2, (2,)), xi)
    lines.append(f"hamiltonian derivation of {a.alpha}: {a.ham_der}")
    value = structure.l(2, [GradedElement(0, a), GradedElement(0, b)])
    lines.append(f"l2 of the two sample forms: {value.payload.alpha}")
    return "\n".join(lines)


def _demo_acyclicity():
    lines = ["contracting homotopy in one variable"]
    einf = AtiyahForm.basis(1, (1,))
    lines.append(f"primitive(e(inf)) = {primitive(einf)}")
    top = AtiyahForm.basis(2, (0, 1, 2))
    lines.append(f"primitive(e(1,2,inf)) = {primitive(top)}")
    return "\n".join(lines)


DEMOS = {
    "canonical-p1": _demo_canonical_p1,
    "canonical-p2": _demo_canonical_p2,
    "acyclicity": _demo_acyclicity,
}


def demo_text(name):
    if name not in DEMOS:
        raise UnknownDemo(name)
    return DEMOS[name]()


def cmd_demo(args):
    try:
        text = demo_text(args.name)
    except UnknownDemo:
        print(
            f"input error: unknown demo {args.name!r}; choose from {sorted(DEMOS)}",
            file=sys.stderr,
        )
        return 2
    print(text)
    return 0


def cmd_primitive(args):
    try:
        with open(args.form, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
        n = int(raw["n"])
        form = serialize.form_from_obj(n, raw)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"input error: form: {exc}", file=sys.stderr)
        return 2
    if form.degree < 1:
        print("input error: form: degree must be at least 1", file=sys.stderr)
        return 2
    try:
        result = primitive(form)
    except NotClosed:
        print("input error: form: not closed, no primitive exists", file=sys.stderr)
        return 2
    payload = {"n": n, **serialize.form_to_obj(result)}
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="omnilie",
        description="exact identity verification for line-bundle derivation calculus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run scenario suites")
    verify.add_argument("--scenario", required=True, help="scenario JSON path")
    verify.add_argument(
        "--report", default="verify-report.json", help="report output path"
    )
    verify.add_argument(
        "--format", choices=("json", "text"), default="json", help="report format"
    )
    verify.set_defaults(func=cmd_verify)

    demo = sub.add_parser("demo", help="print a fixed walkthrough")
    demo.add_argument("name", help="demo name")
    demo.set_defaults(func=cmd_demo)

    prim = sub.add_parser("primitive", help="primitive of a closed form")
    prim.add_argument("--form", required=True, help="serialized form JSON path")
    prim.set_defaults(func=cmd_primitive)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
