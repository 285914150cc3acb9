"""Batch command-line driver emitting machine-readable verification reports.

One job per invocation.  Configuration comes from flags, or from a JSON
config file with the same field names (flags override the file).  Reports
are JSON by default; ``--format text`` renders a small table.  Exit status:
0 all checks passed, 1 at least one check failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from .cyclic import BiCyclicPoly, CyclicPoly
from .derivation import Derivation, verify_msz_decomposition
from .divergence import (
    coboundary,
    div,
    div_cochain,
    div_via_partial,
    n1_classical_cocycles,
    sigma_div,
    sigma_div_cochain,
)
from .solver import (
    CochainAnsatz,
    SolverVerificationError,
    n1_coefficient_tables,
    n1_recursion_violations,
    n1_table_from_vector,
    random_homogeneous,
    solve,
)
from .symplectic import (
    LieElement,
    SymplecticContext,
    Wedge3,
    es_trace,
    es_uniqueness_solve,
    phi_bar_3,
    phi_inject,
    sp_coboundary,
    wedge_basis,
    wedge_str,
)
from .tensor import Alphabet

SCHEMA_VERSION = 1

COMMANDS = ("verify-div", "solve-cocycles", "verify-msz", "n1-cocycles", "es-trace", "es-uniqueness")


@dataclass
class JobConfig:
    command: str
    n: int = 3
    mode: str = "equivariant"
    target: str = "bicyclic"
    max_degree: int = 3
    seed: int = 0
    samples: int = 200


class ConfigError(ValueError):
    pass


def _check(name: str, ok: bool, counterexample: dict | None = None) -> dict:
    entry = {"name": name, "status": "pass" if ok else "fail"}
    if not ok and counterexample is not None:
        entry["counterexample"] = counterexample
    return entry


def _job_verify_div(cfg: JobConfig) -> dict:
    alphabet = Alphabet(cfg.n)
    rng = random.Random(cfg.seed)
    checks = []
    cochains = {"Div": div_cochain(alphabet), "sigma.Div": sigma_div_cochain(alphabet)}
    failures = {name: None for name in cochains}
    route_failure = None
    degree_failure = None
    for _ in range(cfg.samples):
        p = rng.randint(-1, cfg.max_degree)
        q = rng.randint(-1, cfg.max_degree)
        d1 = random_homogeneous(alphabet, p, rng)
        d2 = random_homogeneous(alphabet, q, rng)
        for name, c in cochains.items():
            if failures[name] is None:
                defect = coboundary(c, d1, d2)
                if not defect.is_zero():
                    failures[name] = {"d1": repr(d1), "d2": repr(d2), "defect": repr(defect)}
        if route_failure is None and div(d1) != div_via_partial(d1):
            route_failure = {"d": repr(d1)}
        if degree_failure is None and not div(d1).degrees() <= {p}:
            degree_failure = {"d": repr(d1), "degrees": sorted(div(d1).degrees())}
    checks.append(_check(f"div-cocycle-identity[{cfg.samples} pairs]", failures["Div"] is None, failures["Div"]))
    checks.append(
        _check(f"sigma-div-cocycle-identity[{cfg.samples} pairs]", failures["sigma.Div"] is None, failures["sigma.Div"])
    )
    checks.append(_check("div-matches-partial-derivative-route", route_failure is None, route_failure))
    checks.append(_check("div-is-degree-zero", degree_failure is None, degree_failure))
    return {"checks": checks}


def _job_solve(cfg: JobConfig) -> dict:
    ansatz = CochainAnsatz(Alphabet(cfg.n), mode=cfg.mode, target=cfg.target, max_degree=cfg.max_degree)
    report = solve(ansatz, seed=cfg.seed)
    out = report.to_dict()
    out["checks"] = [
        _check("fresh-pair-verification", report.residual_checks["status"] == "ok"),
    ]
    return out


def _job_verify_msz(cfg: JobConfig) -> dict:
    report = verify_msz_decomposition(Alphabet(cfg.n), cfg.max_degree)
    return {
        "report": asdict(report),
        "checks": [_check(f"degree-{cfg.max_degree}-decomposition", report.direct_sum_ok)],
    }


def _job_n1(cfg: JobConfig) -> dict:
    ansatz = CochainAnsatz(Alphabet(1), mode="full", target="bicyclic", max_degree=cfg.max_degree)
    report = solve(ansatz, seed=cfg.seed)
    checks = [
        _check("dimension-is-3", report.dimension == 3, {"dimension": report.dimension}),
        _check("basis-identified", report.identification is not None),
    ]
    for name, table in n1_coefficient_tables().items():
        bad = n1_recursion_violations(table, 8)
        checks.append(_check(f"recursion-table[{name}]", not bad, {"violations": bad[:5]} if bad else None))
    for i in range(report.dimension):
        table = n1_table_from_vector(report, i)
        bad = n1_recursion_violations(table, cfg.max_degree, max_single=cfg.max_degree)
        checks.append(
            _check(f"recursion-solution[{i}]", not bad, {"violations": bad[:5]} if bad else None)
        )
    out = report.to_dict()
    out["checks"] = checks
    return out


def _job_es_trace(cfg: JobConfig) -> dict:
    checks = []
    for n in (cfg.n, cfg.n + 1):
        ctx = SymplecticContext(n)
        bad = None
        for triple in wedge_basis(ctx):
            d = phi_inject(Wedge3.basis_element(ctx, *triple))
            if not d.symplectic_defect().is_zero():
                bad = {"triple": wedge_str(ctx, triple)}
                break
        checks.append(_check(f"phi-image-symplectic[n={n}]", bad is None, bad))
    ctx = SymplecticContext(cfg.n)
    bad = None
    for i in range(1, ctx.n + 1):
        for j in range(1, ctx.n + 1):
            if i == j:
                continue
            got = phi_bar_3(Wedge3.basis_element(ctx, ctx.x(i), ctx.y(i), ctx.x(j)))
            if got != LieElement.generator(ctx.alphabet, ctx.x(j)):
                bad = {"i": i, "j": j, "value": repr(got)}
    checks.append(_check("phi-bar-3-contraction", bad is None, bad))
    rng = random.Random(cfg.seed)
    phis = [phi_inject(Wedge3.basis_element(ctx, *t)) for t in wedge_basis(ctx)]

    def rand_phi():
        d = phis[0].scaled(0)
        for p in phis:
            c = rng.randint(-2, 2)
            if c:
                d = d + p.scaled(Fraction(c, rng.randint(1, 2)))
        return d

    bad = None
    for _ in range(cfg.samples):
        d1, d2 = rand_phi(), rand_phi()
        defect = sp_coboundary(es_trace, d1, d2)
        if not defect.is_zero():
            bad = {"d1": repr(d1), "d2": repr(d2), "defect": repr(defect)}
            break
    checks.append(_check(f"es-trace-cocycle-identity[{cfg.samples} pairs]", bad is None, bad))
    return {"checks": checks}


def _job_es_uniqueness(cfg: JobConfig) -> dict:
    ctx = SymplecticContext(cfg.n)
    report = es_uniqueness_solve(ctx, cfg.max_degree, seed=cfg.seed)
    out = report.to_dict()
    out["checks"] = [
        _check("contains-es-trace", report.contains_es_trace and report.es_trace_nonzero),
        _check(
            "dimension-1-or-flagged-excess",
            report.dimension == 1 or report.excess_flag,
            {"dimension": report.dimension},
        ),
    ]
    return out


_JOBS = {
    "verify-div": _job_verify_div,
    "solve-cocycles": _job_solve,
    "verify-msz": _job_verify_msz,
    "n1-cocycles": _job_n1,
    "es-trace": _job_es_trace,
    "es-uniqueness": _job_es_uniqueness,
}

_DEFAULT_SAMPLES = {"verify-div": 200, "es-trace": 50}


def run(cfg: JobConfig) -> dict:
    """Execute one job and assemble the schema-versioned report."""
    if cfg.command not in _JOBS:
        raise ConfigError(f"unknown command {cfg.command!r}; choose from {', '.join(COMMANDS)}")
    start = time.time()
    body = _JOBS[cfg.command](cfg)
    elapsed_ms = int((time.time() - start) * 1000)
    checks = body.get("checks", [])
    report = {
        "schema_version": SCHEMA_VERSION,
        "job": asdict(cfg),
        "status": "pass" if all(c["status"] == "pass" for c in checks) else "fail",
    }
    report.update(body)
    report["timings_ms"] = {"total": elapsed_ms}
    return report


def render_text(report: dict) -> str:
    lines = [f"command: {report['job']['command']}   status: {report['status']}"]
    for key in ("dimension", "kernel_dimension", "null_dimension", "unknown_count"):
        if key in report:
            lines.append(f"  {key}: {report[key]}")
    if "dimension_by_cutoff" in report:
        lines.append(f"  dimension by cutoff: {report['dimension_by_cutoff']}")
    for c in report.get("checks", []):
        lines.append(f"  [{'ok' if c['status'] == 'pass' else 'FAIL'}] {c['name']}")
        if c.get("counterexample"):
            lines.append(f"        counterexample: {json.dumps(c['counterexample'])}")
    return "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncdiv",
        description="exact verification jobs for divergence-type cocycles",
    )
    parser.add_argument("--command", choices=COMMANDS)
    parser.add_argument("--n", type=int)
    parser.add_argument("--mode", choices=("equivariant", "full"))
    parser.add_argument("--target", choices=("bicyclic", "cyclic"))
    parser.add_argument("--max-degree", type=int, dest="max_degree")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--samples", type=int)
    parser.add_argument("--config", help="JSON file with job fields; flags override")
    parser.add_argument("--out", help="write the report to this path instead of stdout")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path}: expected a JSON object")
    unknown = set(data) - set(JobConfig.__dataclass_fields__)
    if unknown:
        raise ConfigError(f"config {path}: unknown fields {sorted(unknown)}")
    return data


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        fields: dict = {}
        if args.config:
            fields.update(_load_config(args.config))
        for name in ("command", "n", "mode", "target", "max_degree", "seed", "samples"):
            value = getattr(args, name)
            if value is not None:
                fields[name] = value
        if "command" not in fields:
            raise ConfigError("no command given (use --command or a config file)")
        if "samples" not in fields:
            fields["samples"] = _DEFAULT_SAMPLES.get(fields["command"], 200)
        defaults = {"n": 1} if fields["command"] == "n1-cocycles" else {}
        if fields["command"] == "es-uniqueness":
            defaults = {"n": 2, "max_degree": 4}
        if fields["command"] == "es-trace":
            defaults = {"n": 2}
        for k, v in defaults.items():
            fields.setdefault(k, v)
        cfg = JobConfig(**fields)
    except (ConfigError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        report = run(cfg)
    except (SolverVerificationError,) as exc:
        report = {
            "schema_version": SCHEMA_VERSION,
            "job": asdict(cfg),
            "status": "fail",
            "checks": [
                {"name": "solver-verification", "status": "fail", "counterexample": exc.counterexample}
            ],
            "timings_ms": {},
        }
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    text = render_text(report) if args.format == "text" else json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
