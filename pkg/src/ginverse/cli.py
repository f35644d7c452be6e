"""Command-line frontend.

    ginv compute   --input a.json --inverse mwgi --m 2
    ginv verify    --input a.json --candidate x.json --m 1
    ginv decompose --input a.json --m 1
    ginv solve     --input a.json --b b.json [--y y.json] --m 1
    ginv shift     --m 2 --window 8
    ginv fuzz      --trials 200 --seed 7
    ginv certify   --trials 10 --seed 7   (or --input rational.json)

Exit codes: 0 on success / all checks passing, 1 on any failed check or a
well-formed input without the requested inverse, 2 on unusable input.
Results are machine-readable JSON; --pretty prints a human table instead.
The environment variable GINV_TOL_EQ overrides the default equality
tolerance; explicit --tol-eq wins over both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import eqsolve, generators, oracle, shiftlab, wgi
from .classical import (
    NoCoreInverse,
    NoGroupInverse,
    core_ep,
    core_inverse,
    drazin,
    group_inverse,
    moore_penrose,
)
from .matcore import (
    DEFAULT_TOL,
    MatrixFormatError,
    TolerancePolicy,
    matrix_from_json,
    matrix_to_json,
    rel_residual,
)

__all__ = ["RunConfig", "run", "main"]

_INVERSES = {
    "mp": lambda a, m, tol: moore_penrose(a, tol),
    "group": lambda a, m, tol: group_inverse(a, tol),
    "drazin": lambda a, m, tol: drazin(a, tol),
    "core": lambda a, m, tol: core_inverse(a, tol),
    "core-ep": lambda a, m, tol: core_ep(a, tol),
}

_ROUTE_BY_FLAG = {route.value: route for route in wgi.Route if route is not wgi.Route.RECURSIVE}


@dataclass
class RunConfig:
    """Everything one invocation needs; assembled from parsed arguments."""

    command: str
    m: int = 1
    input: str | None = None
    candidate: str | None = None
    b: str | None = None
    y: str | None = None
    inverse: str = "mwgi"
    route: str = "core-ep"
    window: int = 8
    dim: int = 6
    index: int = 3
    trials: int = 100
    seed: int = 0
    output: str | None = None
    pretty: bool = False
    tol: TolerancePolicy = field(default_factory=TolerancePolicy)


class InputError(Exception):
    """Unusable input: parse failure, bad shape, missing file."""


def _load_json(path: str):
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _load_matrix(path: str) -> np.ndarray:
    try:
        return matrix_from_json(_load_json(path))
    except MatrixFormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_rational(path: str) -> oracle.RationalMatrix:
    try:
        return oracle.RationalMatrix.from_json(_load_json(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(config: RunConfig, payload: dict, table: str | None = None) -> None:
    text = json.dumps(payload, sort_keys=True, ensure_ascii=False)
    if config.output:
        with open(config.output, "w") as handle:
            handle.write(text + "\n")
        if config.pretty and table:
            print(table)
    elif config.pretty and table:
        print(table)
    else:
        print(text)


def _report_table(report: wgi.VerificationReport, title: str) -> str:
    lines = [title, "-" * len(title)]
    width = max(len(name) for name in report.checks)
    for name, check in report.checks.items():
        status = "PASS" if check.passed else "FAIL"
        lines.append(f"{name:<{width}}  {check.residual:12.5e}  {status}")
    lines.append(f"overall: {'PASS' if report.overall else 'FAIL'}")
    return "\n".join(lines)


def _tolerance(args: argparse.Namespace) -> TolerancePolicy:
    eq = args.tol_eq
    if eq is None:
        env = os.environ.get("GINV_TOL_EQ")
        eq = float(env) if env else DEFAULT_TOL.eq_rtol
    return TolerancePolicy(
        rank_rtol=args.tol_rank if args.tol_rank is not None else DEFAULT_TOL.rank_rtol,
        eq_rtol=eq,
        nil_atol=args.tol_nil if args.tol_nil is not None else DEFAULT_TOL.nil_atol,
    )


def _cmd_compute(config: RunConfig) -> int:
    a = _load_matrix(config.input)
    if config.inverse == "mwgi":
        route = _ROUTE_BY_FLAG[config.route]
        try:
            z = wgi.mwgi_by_route(a, config.m, route, config.tol)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        z = _INVERSES[config.inverse](a, config.m, config.tol)
    _emit(config, matrix_to_json(z))
    return 0


def _cmd_verify(config: RunConfig) -> int:
    a = _load_matrix(config.input)
    z = _load_matrix(config.candidate)
    if z.shape != a.shape:
        raise InputError(f"candidate shape {z.shape} does not match input {a.shape}")
    report = wgi.verify_definition(a, z, config.m, config.tol)
    _emit(config, report.to_dict(), _report_table(report, f"verify (m={config.m})"))
    return 0 if report.overall else 1


def _cmd_decompose(config: RunConfig) -> int:
    a = _load_matrix(config.input)
    decomp = wgi.group_decomposition(a, config.m, config.tol)
    report = decomp.verify(a, config.m, config.tol)
    payload = {
        "x": matrix_to_json(decomp.X),
        "y": matrix_to_json(decomp.Y),
        "report": report.to_dict(),
    }
    _emit(config, payload, _report_table(report, f"decomposition (m={config.m})"))
    return 0 if report.overall else 1


def _cmd_solve(config: RunConfig) -> int:
    a = _load_matrix(config.input)
    b = _load_matrix(config.b)
    y = _load_matrix(config.y) if config.y else None
    try:
        solution = eqsolve.solve_general(a, b, config.m, y, config.tol)
        value = eqsolve.residual(a, b, config.m, solution.X, config.tol)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {
        "x": matrix_to_json(solution.X),
        "residual": value,
        "pass": value <= config.tol.eq_rtol,
        "free_part_used": solution.free_part_used,
    }
    table = f"solve (m={config.m}): residual {value:.5e} " + (
        "PASS" if payload["pass"] else "FAIL"
    )
    _emit(config, payload, table)
    return 0 if payload["pass"] else 1


def _cmd_shift(config: RunConfig) -> int:
    try:
        report = shiftlab.verify_shift_identities(config.m, config.window)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    word = str(shiftlab.mwgi_shift(config.m))
    payload = {"word": word, "report": report.to_dict()}
    table = _report_table(report, f"Z = {word} (m={config.m}, window={config.window})")
    _emit(config, payload, table)
    return 0 if report.overall else 1


def _fuzz_trial(rng: np.random.Generator, config: RunConfig, n: int, k: int, m: int) -> dict:
    tol = config.tol
    a = generators.with_index(rng, n, k)
    z = wgi.mwgi(a, m, tol).Z
    residuals: dict[str, float] = {}
    residuals["route_power"] = rel_residual(z, wgi.mwgi_via_power(a, m, tol))
    residuals["route_normal"] = rel_residual(z, wgi.mwgi_normal_equation(a, m, tol))
    residuals["route_drazin_solve"] = rel_residual(z, wgi.mwgi_drazin_solve(a, m, tol))
    residuals["route_core_of_drazin"] = rel_residual(z, wgi.mwgi_core_of_drazin(a, m, tol))
    residuals["route_core_chain"] = rel_residual(z, wgi.mwgi_core_chain(a, m, tol))
    if m >= 2:
        residuals["route_regular_lift"] = rel_residual(z, wgi.mwgi_regular_lift(a, m - 1, tol))
        residuals["route_recursive"] = rel_residual(
            z, wgi.mwgi_step(a, wgi.mwgi(a, m - 1, tol).Z, tol)
        )
    failures = [name for name, value in residuals.items() if value > tol.eq_rtol]

    reports = {
        "definition": wgi.verify_definition(a, z, m, tol),
        "decomposition": wgi.group_decomposition(a, m, tol).verify(a, m, tol),
        "polar": wgi.polar_idempotent(a, m, tol).verify(a, m, tol),
        "b_characterization": wgi.b_characterization(a, m, tol),
        "bc_inverse": wgi.bc_inverse_check(a, m, tol),
        "outer_inverse": wgi.outer_inverse_subspaces(a, m, tol),
    }
    for name, report in reports.items():
        if not report.overall:
            failures.append(name)
        residuals[name] = max(check.residual for check in report.checks.values())

    b = generators.conditioned_matrix(rng, n)
    y = generators.conditioned_matrix(rng, n)
    solved = eqsolve.solve_general(a, b, m, y, tol)
    residuals["equation"] = eqsolve.residual(a, b, m, solved.X, tol)
    if residuals["equation"] > tol.eq_rtol:
        failures.append("equation")

    return {"n": n, "k": k, "m": m, "failures": sorted(failures), "residuals": residuals}


def _cmd_fuzz(config: RunConfig) -> int:
    rng = np.random.default_rng(config.seed)
    m_values = [config.m] if config.m else [1, 2, 3]
    trials = []
    worst: dict[str, float] = {}
    failures = []
    for trial in range(config.trials):
        n = 2 + trial % max(1, config.dim - 1)
        k = trial % (config.index + 1)
        k = min(k, n - 1)
        m = m_values[trial % len(m_values)]
        outcome = _fuzz_trial(rng, config, n, k, m)
        for name, value in outcome["residuals"].items():
            worst[name] = max(worst.get(name, 0.0), value)
        if outcome["failures"]:
            failures.append(
                {"trial": trial, "n": n, "k": k, "m": m, "failures": outcome["failures"]}
            )
        trials.append(outcome)
    payload = {
        "trials": config.trials,
        "seed": config.seed,
        "m_values": m_values,
        "max_residuals": worst,
        "failures": failures,
        "overall": not failures,
    }
    lines = [f"fuzz: {config.trials} trials, seed {config.seed}"]
    for name in sorted(worst):
        lines.append(f"{name:<22} max residual {worst[name]:12.5e}")
    lines.append(f"overall: {'PASS' if not failures else 'FAIL'}")
    _emit(config, payload, "\n".join(lines))
    return 0 if not failures else 1


def _certify_one(
    a: oracle.RationalMatrix, m: int, tol: TolerancePolicy
) -> tuple[dict, bool, wgi.VerificationReport]:
    report = oracle.certify(a, m)
    exact = oracle.exact_mwgi(a, m)
    float_residual = rel_residual(
        wgi.mwgi(a.to_complex(), m, tol).Z, exact.to_complex()
    )
    float_ok = float_residual <= tol.eq_rtol
    payload = {
        "report": report.to_dict(),
        "float_mwgi_residual": float_residual,
        "float_mwgi_pass": float_ok,
    }
    return payload, report.overall and float_ok, report


def _cmd_certify(config: RunConfig) -> int:
    if config.input:
        m = config.m if config.m >= 1 else 1
        a = _load_rational(config.input)
        payload, ok, report = _certify_one(a, m, config.tol)
        _emit(config, payload, _report_table(report, f"certify (m={m})"))
        return 0 if ok else 1
    rng = np.random.default_rng(config.seed)
    m_values = [config.m] if config.m else [1, 2, 3]
    results = []
    all_ok = True
    for trial in range(config.trials):
        n = 2 + trial % min(3, max(1, config.dim - 1))
        k = min(trial % (config.index + 1), n - 1)
        m = m_values[trial % len(m_values)]
        a = generators.rational_with_index(rng, n, k)
        payload, ok, _ = _certify_one(a, m, config.tol)
        results.append({"trial": trial, "n": n, "k": k, "m": m, "pass": ok})
        all_ok = all_ok and ok
    payload = {
        "trials": config.trials,
        "seed": config.seed,
        "results": results,
        "overall": all_ok,
    }
    table = f"certify: {config.trials} trials, overall {'PASS' if all_ok else 'FAIL'}"
    _emit(config, payload, table)
    return 0 if all_ok else 1


_COMMANDS = {
    "compute": _cmd_compute,
    "verify": _cmd_verify,
    "decompose": _cmd_decompose,
    "solve": _cmd_solve,
    "shift": _cmd_shift,
    "fuzz": _cmd_fuzz,
    "certify": _cmd_certify,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        return _COMMANDS[config.command](config)
    except (NoGroupInverse, NoCoreInverse, wgi.OrthogonalityViolation, oracle.HeightOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, ValueError) as exc:
        # well-formed JSON can still be unusable (wrong shape, bad m, ...)
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ginv",
        description="Generalized inverses of complex matrices and their verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_m: bool = True) -> None:
        if needs_m:
            p.add_argument("--m", type=int, default=1, help="weight exponent m >= 1")
        p.add_argument("--tol-rank", type=float, default=None)
        p.add_argument("--tol-eq", type=float, default=None)
        p.add_argument("--tol-nil", type=float, default=None)
        p.add_argument("--output", default=None, help="write JSON here instead of stdout")
        p.add_argument("--pretty", action="store_true", help="print a human-readable table")

    p = sub.add_parser("compute", help="compute an inverse from the family")
    p.add_argument("--input", required=True)
    p.add_argument("--inverse", choices=[*_INVERSES, "mwgi"], default="mwgi")
    p.add_argument("--route", choices=sorted(_ROUTE_BY_FLAG), default="core-ep")
    common(p)

    p = sub.add_parser("verify", help="check a candidate inverse against the defining equations")
    p.add_argument("--input", required=True)
    p.add_argument("--candidate", required=True)
    common(p)

    p = sub.add_parser("decompose", help="split A = X + Y with X group invertible, Y nilpotent")
    p.add_argument("--input", required=True)
    common(p)

    p = sub.add_parser("solve", help="solve the weighted matrix equation")
    p.add_argument("--input", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--y", default=None)
    common(p)

    p = sub.add_parser("shift", help="exact one-sided shift-operator checks")
    p.add_argument("--window", type=int, default=8)
    common(p)

    p = sub.add_parser("fuzz", help="random cross-verification of every route and report")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=6)
    p.add_argument("--index", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=0, help="fix m; 0 cycles through 1..3")
    p.add_argument("--tol-rank", type=float, default=None)
    p.add_argument("--tol-eq", type=float, default=None)
    p.add_argument("--tol-nil", type=float, default=None)
    p.add_argument("--output", default=None)
    p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("certify", help="exact-arithmetic identity battery")
    p.add_argument("--input", default=None, help="rational matrix JSON")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--index", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=0, help="fix m; 0 cycles through 1..3")
    p.add_argument("--tol-rank", type=float, default=None)
    p.add_argument("--tol-eq", type=float, default=None)
    p.add_argument("--tol-nil", type=float, default=None)
    p.add_argument("--output", default=None)
    p.add_argument("--pretty", action="store_true")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command, tol=_tolerance(args))
    for name in (
        "m",
        "input",
        "candidate",
        "b",
        "y",
        "inverse",
        "route",
        "window",
        "dim",
        "index",
        "trials",
        "seed",
        "output",
        "pretty",
    ):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    return config


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "m", 1) < 0 or (args.command not in ("fuzz", "certify") and args.m < 1):
        print("error: --m must be a positive integer", file=sys.stderr)
        return 2
    config = _config_from_args(args)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
