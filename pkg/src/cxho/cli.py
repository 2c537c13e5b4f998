"""Command-line front end: grid scans, verification, trajectories, maximization.

Exit codes: 0 success, 1 I/O error, 2 configuration or validity error,
3 verification failure.  All numeric output is serialized with 17
significant digits and is byte-identical across reruns of the same
configuration and seed.
"""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from . import dynamics, fock, maximize as mx, wavefunctions
from .contour import rotated_path
from .errors import CxhoError
from .params import ModelParams, phase_grid, validate

EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_VERIFY = 3


def parse_complex(text: str) -> complex:
    """Parse '<re>[+/-]<im>i' literals (decimal or scientific parts).

    A bare real literal is accepted as a real number.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty complex literal")
    if not s.endswith("i"):
        return complex(float(s))
    body = s[:-1]
    split = -1
    for idx in range(len(body) - 1, 0, -1):
        if body[idx] in "+-" and body[idx - 1] not in "eE":
            split = idx
            break
    if split < 0:
        raise ValueError(f"expected '<re>[+/-]<im>i', got {text!r}")
    return complex(float(body[:split]), float(body[split:]))


class ComplexParam(click.ParamType):
    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return parse_complex(str(value))
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


COMPLEX = ComplexParam()


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_dumps(obj, indent: int = 0) -> str:
    pad = " " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return f'{{"re": {_fmt(obj.real)}, "im": {_fmt(obj.imag)}}}'
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {_json_dumps(v, indent + 2)}'
            for k, v in obj.items())
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        items = list(obj)
        if not items:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in items):
            return "[" + ", ".join(_json_dumps(v) for v in items) + "]"
        inner = ",\n".join(pad + "  " + _json_dumps(v, indent + 2) for v in items)
        return "[\n" + inner + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _csv_text(header: list[str], rows: list[list]) -> str:
    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, (float, np.floating)):
            return _fmt(v)
        return str(v)

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _write_output(path: str, text: str) -> None:
    if path == "-":
        click.echo(text, nl=False)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        click.echo(f"error: cannot write {path}: {exc}", err=True)
        sys.exit(EXIT_IO)


def _fail_config(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_CONFIG)


def _apply_config(ctx: click.Context, config_path: str | None,
                  values: dict) -> dict:
    """Merge a JSON config file under the command-line flags.

    Keys mirror the flag names with dashes replaced by underscores; flags
    given explicitly win.  Unknown keys are rejected.
    """
    if config_path is None:
        return values
    try:
        with open(config_path) as fh:
            config = json.load(fh)
    except OSError as exc:
        click.echo(f"error: cannot read config {config_path}: {exc}", err=True)
        sys.exit(EXIT_IO)
    except json.JSONDecodeError as exc:
        _fail_config(f"config {config_path} is not valid JSON: {exc}")
    if not isinstance(config, dict):
        _fail_config(f"config {config_path} must hold a JSON object")
    by_flag = {}
    for param in ctx.command.params:
        by_flag[param.name] = param
        for opt in param.opts:
            if opt.startswith("--"):
                by_flag[opt[2:].replace("-", "_")] = param
    merged = dict(values)
    for key, raw in config.items():
        param = by_flag.get(key.replace("-", "_"))
        if param is None or param.name not in values:
            _fail_config(f"unknown config field {key!r}")
        if ctx.get_parameter_source(param.name) is click.core.ParameterSource.DEFAULT:
            try:
                merged[param.name] = param.type.convert(raw, param, ctx)
            except click.UsageError as exc:
                _fail_config(f"config field {key!r}: {exc}")
    return merged


def _validated(values: dict) -> ModelParams:
    try:
        return validate(values["m"], values["omega"], hbar=values["hbar"],
                        eps=values["eps"], eps_prime=values["eps_prime"])
    except (CxhoError, ValueError) as exc:
        _fail_config(str(exc))


def _model_options(func):
    for option in reversed([
        click.option("--m", type=COMPLEX, default="1+0i", show_default=True,
                     help="Complex mass, '<re>[+/-]<im>i'."),
        click.option("--omega", type=COMPLEX, default="1+0i", show_default=True,
                     help="Complex angular frequency."),
        click.option("--hbar", type=float, default=1.0, show_default=True),
        click.option("--eps", type=float, default=1e-3, show_default=True,
                     help="Coordinate regulator."),
        click.option("--eps-prime", type=float, default=1e-3, show_default=True,
                     help="Momentum regulator."),
        click.option("--config", type=click.Path(), default=None,
                     help="JSON file mirroring the flags; flags override it."),
    ]):
        func = option(func)
    return func


@click.group()
def main():
    """Complex-mass, complex-frequency harmonic oscillator toolkit."""


@main.command("phase-diagram")
@click.option("--grid", type=int, default=64, show_default=True,
              help="Points per angle direction (>= 2).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--output", type=click.Path(), default="-", show_default=True)
@click.option("--config", type=click.Path(), default=None,
              help="JSON file mirroring the flags; flags override it.")
@click.pass_context
def cmd_phase_diagram(ctx, grid, fmt, output, config):
    """Classify a uniform grid over the allowed angle parallelogram."""
    values = _apply_config(ctx, config, {"grid": grid, "fmt": fmt,
                                         "output": output})
    try:
        rows = phase_grid(values["grid"])
    except ValueError as exc:
        _fail_config(str(exc))
    header = ["theta_m", "theta_omega", "theory", "region", "potential",
              "normalizable", "excluded_corner"]
    if values["fmt"] == "csv":
        table = [[tm, tw, c.theory.value, c.region, c.potential.value,
                  c.normalizable, c.excluded_corner] for tm, tw, c in rows]
        text = _csv_text(header, table)
    else:
        records = [{"theta_m": tm, "theta_omega": tw,
                    "theory": c.theory.value, "region": c.region,
                    "potential": c.potential.value,
                    "normalizable": c.normalizable,
                    "excluded_corner": c.excluded_corner}
                   for tm, tw, c in rows]
        text = _json_dumps(records) + "\n"
    _write_output(values["output"], text)


def _verify_checks(params: ModelParams, n_max: int, seed: int,
                   tol_override: float | None) -> list[dict]:
    """Run the cross-module property suite; one record per check."""

    checks = []

    def add(name, defect, tolerance):
        tolerance = tol_override if tol_override is not None else tolerance
        checks.append({"name": name, "defect": float(defect),
                       "tolerance": float(tolerance),
                       "passed": bool(defect <= tolerance)})

    rep = fock.build(params, n_max)
    add("ladder_commutator", fock.commutator_defect(rep), 1e-13)
    add("coordinate_hermiticity",
        max(np.abs(rep.q_herm - rep.q_herm.conj().T).max(),
            np.abs(rep.p_herm - rep.p_herm.conj().T).max()), 1e-13)
    q_defect, p_defect = fock.conjugation_defect(rep)
    add("conjugation_q", q_defect, 1e-14)
    add("conjugation_p", p_defect, 1e-14)
    add("lowering_adjoint_is_raising",
        np.abs(rep.lowering.conj().T - rep.raising).max(), 0.0)
    h_defect, a_defect, tan_defect = fock.herm_split_defect(rep)
    add("herm_split_h", h_defect, 1e-12)
    add("herm_split_a", a_defect, 1e-12)
    add("herm_split_tan", tan_defect, 1e-12)
    diag_target = (params.hbar * params.r_omega * math.cos(params.theta_omega)
                   * (np.arange(n_max) + 0.5))
    add("h_herm_diagonal", np.abs(np.diag(rep.h_herm) - diag_target).max(), 1e-12)

    gram = wavefunctions.gram_and_metric(params, n_max)
    eye = np.eye(n_max)
    add("dual_normalization", np.abs(gram.cross - eye).max(), 1e-8)
    add("metric_inverse", np.abs(gram.S @ gram.Qmat - eye).max(), 1e-8)
    add("metric_positivity", max(0.0, -np.linalg.eigvalsh(gram.Qmat).min()), 0.0)
    add("gram_head_entry",
        abs(gram.S[0, 0] - 1 / math.sqrt(math.cos(params.theta))), 1e-9)
    overlap_path = rotated_path(
        0.0, 13.0 * math.sqrt(params.hbar / params.momega.real), 400)
    integrand = (np.conj(wavefunctions.ground_regulated(
        2, overlap_path.nodes.real, params))
        * wavefunctions.ground_regulated(1, overlap_path.nodes.real, params))
    add("ground_dual_overlap",
        abs(np.dot(overlap_path.weights, integrand) - 1.0), 1e-10)

    n_dyn = 40
    rep_dyn = fock.build(params, n_dyn)
    lam_a, lam_b = 1.0, 0.6 + 0.2j
    duration = 4.0
    system = dynamics.TwoStateSystem(
        fock.coherent_coeffs(lam_a, n_dyn), fock.coherent_coeffs(lam_b, n_dyn),
        0.0, duration, params, rep_dyn)
    samples = dynamics.trajectory(system, np.linspace(0.0, duration, 5))
    amps = np.array([s.amplitude for s in samples])
    add("amplitude_time_independence",
        np.abs(amps - amps[0]).max() / abs(amps[0]), 1e-12)
    closed = dynamics.coherent_state_at(lam_a, 1.0, "A", n_dyn, params)
    propagated = dynamics.evolve_a(fock.coherent_coeffs(lam_a, n_dyn), 1.0, params)
    add("coherent_two_route",
        np.abs(closed.coeffs - propagated.coeffs).max(), 1e-10)
    t = 1.25
    a_t, b_t = system.states_at(t)
    q_closed, p_closed = dynamics.weak_qp_closed(
        dynamics.coherent_lambda(lam_a, t, "A", params),
        dynamics.coherent_lambda(lam_b, t - duration, "B", params), params)
    add("weak_qp_closed_vs_matrix",
        max(abs(dynamics.weak_value(rep_dyn.q_op, a_t, b_t) - q_closed),
            abs(dynamics.weak_value(rep_dyn.p_op, a_t, b_t) - p_closed)), 1e-9)
    r_coarse = dynamics.ehrenfest_residual(system, 1.0, 2e-2)
    r_fine = dynamics.ehrenfest_residual(system, 1.0, 1e-2)
    ratios = [abs(c) / abs(f) for c, f in zip(r_coarse, r_fine) if abs(f) > 0]
    add("ehrenfest_second_order",
        max(abs(r - 4.0) for r in ratios) if ratios else 0.0, 0.4)

    duration_max = 10.0
    result = mx.maximize(duration_max, params, 8, seed=seed)
    add("maximize_matches_analytic",
        abs(result.amplitude_abs - result.analytic_max), 1e-9)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(200):
        a = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        b = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        pair_amp = abs(mx.amplitude(
            fock.StateVec(a / np.linalg.norm(a)),
            fock.StateVec(b / np.linalg.norm(b)), duration_max, params))
        worst = max(worst, pair_amp - result.analytic_max)
    add("amplitude_upper_bound", max(0.0, worst), 1e-12)
    rep8 = fock.build(params, 8)
    q_wv, p_wv, h_wv = mx.max_weak_values(result, rep8)
    add("h_herm_weak_value",
        abs(h_wv - params.hbar * params.r_omega
            * math.cos(params.theta_omega) / 2), 1e-12)
    if not result.degenerate:
        add("maximize_ground_overlap", 1.0 - result.ground_overlap, 1e-6)
        add("classical_solution_q", abs(q_wv), 1e-10)
        add("classical_solution_p", abs(p_wv), 1e-10)
    return checks


@main.command("verify")
@_model_options
@click.option("--nmax", type=int, default=32, show_default=True)
@click.option("--tol", type=float, default=None,
              help="Override every per-check tolerance.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", type=click.Path(), default="-", show_default=True)
@click.pass_context
def cmd_verify(ctx, m, omega, hbar, eps, eps_prime, config, nmax, tol, seed,
               output):
    """Run the cross-module property suite and report defects."""
    values = _apply_config(ctx, config, {
        "m": m, "omega": omega, "hbar": hbar, "eps": eps,
        "eps_prime": eps_prime, "nmax": nmax, "tol": tol, "seed": seed,
        "output": output})
    params = _validated(values)
    try:
        checks = _verify_checks(params, values["nmax"], values["seed"],
                                values["tol"])
    except (CxhoError, ValueError) as exc:
        _fail_config(str(exc))
    report = {
        "m": params.m, "omega": params.omega, "hbar": params.hbar,
        "eps": params.eps, "eps_prime": params.eps_prime,
        "nmax": values["nmax"], "seed": values["seed"],
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }
    _write_output(values["output"], _json_dumps(report) + "\n")
    if not report["all_passed"]:
        sys.exit(EXIT_VERIFY)


@main.command("maximize")
@_model_options
@click.option("--T", "duration", type=float, default=10.0, show_default=True,
              help="Time span between the boundary states.")
@click.option("--nmax", type=int, default=32, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--max-iters", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", type=click.Path(), default="-", show_default=True)
@click.pass_context
def cmd_maximize(ctx, m, omega, hbar, eps, eps_prime, config, duration, nmax,
                 tol, max_iters, seed, output):
    """Maximize the transition amplitude over boundary states."""
    values = _apply_config(ctx, config, {
        "m": m, "omega": omega, "hbar": hbar, "eps": eps,
        "eps_prime": eps_prime, "duration": duration, "nmax": nmax,
        "tol": tol, "max_iters": max_iters, "seed": seed, "output": output})
    params = _validated(values)
    try:
        result = mx.maximize(values["duration"], params, values["nmax"],
                             tol=values["tol"], max_iters=values["max_iters"],
                             seed=values["seed"])
    except (CxhoError, ValueError) as exc:
        _fail_config(str(exc))
    payload = {
        "duration": result.duration,
        "amplitude_abs": result.amplitude_abs,
        "analytic_max": result.analytic_max,
        "ground_overlap": result.ground_overlap,
        "degenerate": result.degenerate,
        "iterations": result.iterations,
        "converged": result.converged,
        "seed": result.seed,
        "a": list(result.a.coeffs),
        "b": list(result.b.coeffs),
    }
    _write_output(values["output"], _json_dumps(payload) + "\n")


@main.command("evolve")
@_model_options
@click.option("--lambda-a", type=COMPLEX, default="1+0i", show_default=True,
              help="Coherent label of the initial state.")
@click.option("--lambda-b", type=COMPLEX, default="1+0i", show_default=True,
              help="Coherent label of the final state.")
@click.option("--t-a", type=float, default=0.0, show_default=True)
@click.option("--t-b", type=float, default=10.0, show_default=True)
@click.option("--steps", type=int, default=100, show_default=True,
              help="Number of grid intervals between t-a and t-b.")
@click.option("--nmax", type=int, default=32, show_default=True)
@click.option("--output", type=click.Path(), default="-", show_default=True)
@click.pass_context
def cmd_evolve(ctx, m, omega, hbar, eps, eps_prime, config, lambda_a,
               lambda_b, t_a, t_b, steps, nmax, output):
    """Weak-value time series for a coherent boundary pair (CSV)."""
    values = _apply_config(ctx, config, {
        "m": m, "omega": omega, "hbar": hbar, "eps": eps,
        "eps_prime": eps_prime, "lambda_a": lambda_a, "lambda_b": lambda_b,
        "t_a": t_a, "t_b": t_b, "steps": steps, "nmax": nmax,
        "output": output})
    params = _validated(values)
    if values["steps"] < 1:
        _fail_config(f"steps must be >= 1, got {values['steps']}")
    if values["t_b"] <= values["t_a"]:
        _fail_config("t-b must exceed t-a")
    try:
        rep = fock.build(params, values["nmax"])
        system = dynamics.TwoStateSystem(
            fock.coherent_coeffs(values["lambda_a"], values["nmax"]).normalized(),
            fock.coherent_coeffs(values["lambda_b"], values["nmax"]).normalized(),
            values["t_a"], values["t_b"], params, rep)
    except (CxhoError, ValueError) as exc:
        _fail_config(str(exc))
    times = np.linspace(values["t_a"], values["t_b"], values["steps"] + 1)
    header = ["t", "amplitude_re", "amplitude_im", "q_op_re", "q_op_im",
              "p_op_re", "p_op_im", "q_herm_re", "q_herm_im", "p_herm_re",
              "p_herm_im", "h_herm_re", "h_herm_im", "status"]
    rows = []
    for t in times:
        samples = dynamics.trajectory(system, [t])
        if not samples:
            rows.append([float(t)] + [""] * 12 + ["vanishing_overlap"])
            continue
        s = samples[0]
        rows.append([
            s.t, s.amplitude.real, s.amplitude.imag,
            s.q_op.real, s.q_op.imag, s.p_op.real, s.p_op.imag,
            s.q_herm.real, s.q_herm.imag, s.p_herm.real, s.p_herm.imag,
            s.h_herm.real, s.h_herm.imag, "ok"])
    _write_output(values["output"], _csv_text(header, rows))


@main.command("wavefunction")
@_model_options
@click.option("--n", type=int, default=0, show_default=True,
              help="Level index.")
@click.option("--basis", type=click.Choice(["1", "2"]), default="1",
              show_default=True)
@click.option("--ray-angle", type=float, default=0.0, show_default=True,
              help="Angle of the sampling ray in the complex plane.")
@click.option("--half-width", type=float, default=None,
              help="Half-extent of the ray; defaults to a level-scaled value.")
@click.option("--points", type=int, default=401, show_default=True)
@click.option("--output", type=click.Path(), default="-", show_default=True)
@click.pass_context
def cmd_wavefunction(ctx, m, omega, hbar, eps, eps_prime, config, n, basis,
                     ray_angle, half_width, points, output):
    """Sample a level wavefunction along a ray (CSV)."""
    values = _apply_config(ctx, config, {
        "m": m, "omega": omega, "hbar": hbar, "eps": eps,
        "eps_prime": eps_prime, "n": n, "basis": basis,
        "ray_angle": ray_angle, "half_width": half_width, "points": points,
        "output": output})
    params = _validated(values)
    if values["points"] < 2:
        _fail_config(f"points must be >= 2, got {values['points']}")
    width = values["half_width"]
    if width is None:
        width = 12.0 * math.sqrt(params.hbar * (values["n"] + 1) / params.r)
    qs = (np.linspace(-width, width, values["points"])
          * np.exp(1j * values["ray_angle"]))
    try:
        psi = wavefunctions.eigenfunction(int(values["basis"]), values["n"],
                                          qs, params)
    except (CxhoError, ValueError) as exc:
        _fail_config(str(exc))
    rows = [[q.real, q.imag, v.real, v.imag] for q, v in zip(qs, psi)]
    _write_output(values["output"],
                  _csv_text(["q_re", "q_im", "psi_re", "psi_im"], rows))


if __name__ == "__main__":
    main()
