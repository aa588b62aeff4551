"""Command-line front end.

Subcommands:

* ``run``       simulate one configuration and write fields/mass/summary files
* ``converge``  spatial refinement study at a probe point
* ``compare``   score a run against measured uptake data from a CSV file
* ``presets``   list the built-in experiment presets

Exit codes: 0 success, 2 bad configuration, 3 numerical breakdown,
4 non-convergence (stalled iteration or unsettled mass curve).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from .exceptions import (
    BoundaryRootError,
    ConfigError,
    DomainError,
    EquilibrationError,
    NumericsError,
    StepConvergenceError,
)
from .experiments import (
    ExperimentPreset,
    compare_external_curve,
    default_convergence_grids,
    preset,
    preset_names,
    run_convergence_study,
    run_mass_uptake,
)
from .onedim import LoadSchedule, NondimParams, State1D, normalized_mass
from .solver import SolverConfig, run, steady_state_oracle

_REQUIRED_KEYS = ("beta1", "beta2", "chi", "mu_p_star", "mu_G_star",
                  "gamma_star", "N", "dt_star", "t_final")
_OPTIONAL_KEYS = ("tolerance", "schedule", "P_inf_star", "sample_every",
                  "characteristic_time", "time_unit", "max_inner_iters",
                  "pde_substep_safety", "ode_substeps", "epsilon_floor")


@dataclass(frozen=True)
class RunConfig:
    """Everything one simulation needs, assembled from a preset or a file."""

    nd: NondimParams
    schedule: LoadSchedule
    n_points: int
    dt_star: float
    tolerance: float
    t_final: float
    sample_every: int = 1
    characteristic_time: float = 1.0
    time_unit: str = "t*"
    solver: SolverConfig | None = None
    preset_name: str | None = None

    def solver_config(self) -> SolverConfig:
        if self.solver is not None:
            return self.solver
        return SolverConfig(dt_star=self.dt_star, tolerance=self.tolerance)


def _need_number(mapping, key, *, positive=False, nonnegative=False) -> float:
    if key not in mapping:
        raise ConfigError(key, "missing required key")
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(key, f"expected a number, got {value!r}")
    value = float(value)
    if positive and value <= 0.0:
        raise ConfigError(key, f"must be > 0, got {value!r}")
    if nonnegative and value < 0.0:
        raise ConfigError(key, f"must be >= 0, got {value!r}")
    return value


def _optional_number(mapping, key, default, **kwargs) -> float:
    if key not in mapping:
        return default
    return _need_number(mapping, key, **kwargs)


def _parse_schedule(raw, t_final: float, p_inf_star: float) -> LoadSchedule:
    if raw is None:
        return LoadSchedule(((t_final, 0.0),), p_inf_star=p_inf_star)
    if not isinstance(raw, (list, tuple)) or len(raw) == 0:
        raise ConfigError("schedule", f"expected a list of [t_end, load] pairs, got {raw!r}")
    segments = []
    for i, pair in enumerate(raw):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in pair)):
            raise ConfigError("schedule", f"entry {i} is not a [t_end, load] pair: {pair!r}")
        segments.append((float(pair[0]), float(pair[1])))
    try:
        return LoadSchedule(tuple(segments), p_inf_star=p_inf_star)
    except DomainError as exc:
        raise ConfigError("schedule", str(exc)) from exc


def config_from_mapping(mapping, source: str = "config") -> RunConfig:
    """Validate a flat mapping (parsed YAML) into a RunConfig.

    Unknown keys are rejected so typos fail loudly instead of silently
    falling back to defaults.
    """
    if not isinstance(mapping, dict):
        raise ConfigError(source, f"expected a mapping of keys, got {type(mapping).__name__}")
    known = set(_REQUIRED_KEYS) | set(_OPTIONAL_KEYS)
    for key in mapping:
        if key not in known:
            raise ConfigError(str(key), "unknown key")

    try:
        nd = NondimParams(
            beta1=_need_number(mapping, "beta1", positive=True),
            beta2=_need_number(mapping, "beta2", positive=True),
            chi=_need_number(mapping, "chi"),
            mu_p_star=_need_number(mapping, "mu_p_star", nonnegative=True),
            mu_G_star=_need_number(mapping, "mu_G_star", nonnegative=True),
            gamma_star=_need_number(mapping, "gamma_star", positive=True),
        )
    except DomainError as exc:
        raise ConfigError("material", str(exc)) from exc

    n_raw = mapping.get("N")
    if n_raw is None:
        raise ConfigError("N", "missing required key")
    if isinstance(n_raw, bool) or not isinstance(n_raw, int):
        raise ConfigError("N", f"expected an integer, got {n_raw!r}")
    if n_raw < 3:
        raise ConfigError("N", f"need at least 3 grid points, got {n_raw}")

    dt_star = _need_number(mapping, "dt_star", positive=True)
    t_final = _need_number(mapping, "t_final", nonnegative=True)
    tolerance = _optional_number(mapping, "tolerance", 1e-4, positive=True)
    p_inf_star = _optional_number(mapping, "P_inf_star", 0.0, nonnegative=True)
    schedule = _parse_schedule(mapping.get("schedule"), t_final, p_inf_star)

    sample_raw = mapping.get("sample_every", 1)
    if isinstance(sample_raw, bool) or not isinstance(sample_raw, int) or sample_raw < 1:
        raise ConfigError("sample_every", f"expected a positive integer, got {sample_raw!r}")

    time_unit = mapping.get("time_unit", "t*")
    if not isinstance(time_unit, str):
        raise ConfigError("time_unit", f"expected a string, got {time_unit!r}")

    solver = None
    if any(k in mapping for k in ("max_inner_iters", "pde_substep_safety",
                                  "ode_substeps", "epsilon_floor")):
        max_inner = mapping.get("max_inner_iters", 50)
        if isinstance(max_inner, bool) or not isinstance(max_inner, int) or max_inner < 1:
            raise ConfigError("max_inner_iters", f"expected a positive integer, got {max_inner!r}")
        ode_sub = mapping.get("ode_substeps", 10)
        if isinstance(ode_sub, bool) or not isinstance(ode_sub, int) or ode_sub < 1:
            raise ConfigError("ode_substeps", f"expected a positive integer, got {ode_sub!r}")
        try:
            solver = SolverConfig(
                dt_star=dt_star, tolerance=tolerance, max_inner_iters=max_inner,
                pde_substep_safety=_optional_number(
                    mapping, "pde_substep_safety", 0.4, positive=True),
                ode_substeps=ode_sub,
                epsilon_floor=_optional_number(
                    mapping, "epsilon_floor", 1e-10, positive=True),
            )
        except DomainError as exc:
            raise ConfigError("solver", str(exc)) from exc

    return RunConfig(
        nd=nd, schedule=schedule, n_points=n_raw, dt_star=dt_star,
        tolerance=tolerance, t_final=t_final, sample_every=sample_raw,
        characteristic_time=_optional_number(
            mapping, "characteristic_time", 1.0, positive=True),
        time_unit=time_unit, solver=solver)


def config_from_preset(exp: ExperimentPreset) -> RunConfig:
    return RunConfig(
        nd=exp.nd, schedule=exp.schedule, n_points=exp.n_points,
        dt_star=exp.dt_star, tolerance=exp.tolerance, t_final=exp.t_final,
        characteristic_time=exp.characteristic_time, time_unit=exp.time_unit,
        preset_name=exp.name)


def load_config_file(path: str) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError("config", f"invalid YAML in {path}: {exc}") from exc
    return config_from_mapping(data, source=path)


def _resolve_config(args) -> RunConfig:
    if getattr(args, "config", None):
        cfg = load_config_file(args.config)
    else:
        cfg = config_from_preset(preset(args.preset))
    updates = {}
    if getattr(args, "t_final", None) is not None:
        if args.t_final < 0.0:
            raise ConfigError("t-final", f"must be >= 0, got {args.t_final!r}")
        updates["t_final"] = float(args.t_final)
    if getattr(args, "grid", None) is not None:
        if args.grid < 3:
            raise ConfigError("grid", f"need at least 3 grid points, got {args.grid}")
        updates["n_points"] = int(args.grid)
    if getattr(args, "dt", None) is not None:
        if args.dt <= 0.0:
            raise ConfigError("dt", f"must be > 0, got {args.dt!r}")
        updates["dt_star"] = float(args.dt)
        if cfg.solver is not None:
            updates["solver"] = SolverConfig(
                dt_star=float(args.dt), tolerance=cfg.solver.tolerance,
                max_inner_iters=cfg.solver.max_inner_iters,
                pde_substep_safety=cfg.solver.pde_substep_safety,
                ode_substeps=cfg.solver.ode_substeps,
                epsilon_floor=cfg.solver.epsilon_floor)
    if updates:
        from dataclasses import replace
        cfg = replace(cfg, **updates)
    return cfg


def _fmt(x) -> str:
    """Shortest round-trip decimal form; keeps output bytes reproducible."""
    return repr(float(x))


def _write_fields_csv(path: Path, record) -> None:
    lines = ["t_star,Z_star,p,g"]
    n = record.p_fields.shape[1]
    grid = np.linspace(-1.0, 1.0, n)
    for k in range(record.times.size):
        t = _fmt(record.times[k])
        for j in range(n):
            lines.append(
                f"{t},{_fmt(grid[j])},{_fmt(record.p_fields[k, j])},{_fmt(record.g_fields[k, j])}")
    path.write_text("\n".join(lines) + "\n")


def _write_mass_csv(path: Path, record) -> None:
    span = float(record.mass[-1] - record.mass[0]) if record.mass.size else 0.0
    if record.mass.size >= 2 and span != 0.0:
        norm = normalized_mass(record.mass)
    else:
        norm = np.full_like(record.mass, float("nan"))
    lines = ["t_star,mass_ratio,normalized_mass"]
    for k in range(record.times.size):
        lines.append(f"{_fmt(record.times[k])},{_fmt(record.mass[k])},{_fmt(norm[k])}")
    path.write_text("\n".join(lines) + "\n")


def _oracle_summary(cfg: RunConfig, record) -> dict | None:
    f_final = cfg.schedule.force_at(float(record.times[-1]))
    try:
        p_eq, g_eq = steady_state_oracle(cfg.nd, f_star=f_final)
    except DomainError:
        return None
    p_final = record.p_fields[-1]
    return {
        "f_star": f_final,
        "p_eq": p_eq,
        "g_eq": g_eq,
        "max_rel_gap": float(np.max(np.abs(p_final - p_eq)) / p_eq),
    }


def _summary_dict(cfg: RunConfig, record) -> dict:
    solver_cfg = cfg.solver_config()
    return {
        "preset": cfg.preset_name,
        "beta1": cfg.nd.beta1,
        "beta2": cfg.nd.beta2,
        "chi": cfg.nd.chi,
        "mu_p_star": cfg.nd.mu_p_star,
        "mu_G_star": cfg.nd.mu_G_star,
        "gamma_star": cfg.nd.gamma_star,
        "N": cfg.n_points,
        "dt_star": cfg.dt_star,
        "tolerance": cfg.tolerance,
        "t_final": cfg.t_final,
        "schedule": [[t, f] for t, f in cfg.schedule.segments],
        "P_inf_star": cfg.schedule.p_inf_star,
        "characteristic_time": cfg.characteristic_time,
        "time_unit": cfg.time_unit,
        "pde_substep_safety": solver_cfg.pde_substep_safety,
        "samples": int(record.times.size),
        "final_t_star": float(record.times[-1]),
        "final_mass_ratio": float(record.mass[-1]),
        "final_boundary_p": [float(record.boundary_p[-1, 0]),
                             float(record.boundary_p[-1, 1])],
        "inner_iterations_max": int(record.inner_iterations.max())
        if record.inner_iterations.size else 0,
        "floor_activations_total": int(record.floor_activations.sum())
        if record.floor_activations.size else 0,
        "steady_state": _oracle_summary(cfg, record),
        "diagnostics": list(record.diagnostics),
    }


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n")


def _out_dir(args) -> Path:
    out = Path(getattr(args, "out", ".") or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_run(args) -> int:
    cfg = _resolve_config(args)
    record = run(State1D.uniform(cfg.n_points), cfg.schedule, cfg.nd,
                 cfg.solver_config(), cfg.t_final, cfg.sample_every)
    out = _out_dir(args)
    _write_fields_csv(out / "fields.csv", record)
    _write_mass_csv(out / "mass.csv", record)
    _write_json(out / "summary.json", _summary_dict(cfg, record))
    print(f"wrote {out / 'fields.csv'}, {out / 'mass.csv'}, {out / 'summary.json'}")
    print(f"final t*={record.times[-1]:g}  mass ratio={record.mass[-1]:.6f}")
    return 0


def _parse_grid_list(raw: str) -> tuple[int, ...]:
    try:
        grids = tuple(int(tok) for tok in raw.split(",") if tok.strip())
    except ValueError:
        raise ConfigError("grids", f"expected comma-separated integers, got {raw!r}") from None
    if not grids:
        raise ConfigError("grids", "empty grid list")
    return grids


def cmd_converge(args) -> int:
    cfg = _resolve_config(args)
    grids = _parse_grid_list(args.grids) if args.grids else default_convergence_grids()
    report = run_convergence_study(
        cfg.nd, cfg.schedule, grids=grids, reference=args.reference,
        probe_t=args.probe_t, dt_star=cfg.dt_star, tolerance=cfg.tolerance)
    out = _out_dir(args)
    lines = ["grid,error"]
    for n, e in zip(report.grids, report.errors):
        lines.append(f"{n},{_fmt(e)}")
    (out / "convergence.csv").write_text("\n".join(lines) + "\n")
    _write_json(out / "summary.json", {
        "grids": list(report.grids),
        "errors": [float(e) for e in report.errors],
        "reference": report.reference,
        "reference_value": report.reference_value,
        "probe_z": report.probe_z,
        "probe_t": report.probe_t,
        "dt_star": report.dt_star,
        "monotone_within_5pct": report.monotone_within(0.05),
    })
    verdict = "monotone" if report.monotone_within(0.05) else "NOT monotone"
    print(f"wrote {out / 'convergence.csv'}")
    print(f"errors {verdict} within a 5% band; "
          f"e({report.grids[0]})={report.errors[0]:.3e} "
          f"e({report.grids[-1]})={report.errors[-1]:.3e}")
    return 0


def cmd_compare(args) -> int:
    cfg = _resolve_config(args)
    exp = ExperimentPreset(
        name=cfg.preset_name or "custom", description="",
        nd=cfg.nd, n_points=cfg.n_points, dt_star=cfg.dt_star,
        tolerance=cfg.tolerance, t_final=cfg.t_final, schedule=cfg.schedule,
        characteristic_time=cfg.characteristic_time, time_unit=cfg.time_unit)
    result = run_mass_uptake(exp, sample_every=cfg.sample_every)
    lab_times = result.t_star * cfg.characteristic_time
    comparison = compare_external_curve(lab_times, result.normalized, args.data)
    out = _out_dir(args)
    _write_json(out / "comparison.json", {
        "data": str(args.data),
        "time_unit": cfg.time_unit,
        "n_points": comparison.n_points,
        "rmse": comparison.rmse,
        "max_abs_dev": comparison.max_abs_dev,
    })
    print(f"compared {comparison.n_points} points from {args.data}")
    print(f"rmse={comparison.rmse:.4e}  max |dev|={comparison.max_abs_dev:.4e}")
    return 0


def cmd_presets(args) -> int:
    for name in preset_names():
        exp = preset(name)
        nd = exp.nd
        print(f"{name}: {exp.description}")
        print(f"    beta1={nd.beta1:g} beta2={nd.beta2:g} chi={nd.chi:g} "
              f"mu_p*={nd.mu_p_star:g} mu_G*={nd.mu_G_star:g} gamma*={nd.gamma_star:g}")
        print(f"    N={exp.n_points} dt*={exp.dt_star:g} t_final={exp.t_final:g} "
              f"(t*=1 is {exp.characteristic_time:g} {exp.time_unit})")
    return 0


def _add_config_args(sub, with_overrides: bool = True) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=preset_names(),
                       help="built-in experiment preset")
    group.add_argument("--config", metavar="FILE", help="YAML configuration file")
    sub.add_argument("--out", metavar="DIR", default=".",
                     help="output directory (default: current)")
    if with_overrides:
        sub.add_argument("--t-final", type=float, dest="t_final", metavar="T",
                         help="override the horizon t*")
        sub.add_argument("--grid", type=int, metavar="N",
                         help="override the number of grid points")
        sub.add_argument("--dt", type=float, metavar="DT",
                         help="override the macro time step")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swelldiff",
        description="1D solvent diffusion through a swelling viscoelastic film")
    subs = parser.add_subparsers(dest="command", required=True)

    p_run = subs.add_parser("run", help="simulate one configuration")
    _add_config_args(p_run)
    p_run.set_defaults(func=cmd_run)

    p_conv = subs.add_parser("converge", help="spatial refinement study")
    _add_config_args(p_conv, with_overrides=False)
    p_conv.add_argument("--dt", type=float, metavar="DT",
                        help="override the macro time step")
    p_conv.add_argument("--grids", metavar="N1,N2,...",
                        help="comma-separated grid sizes (default: built-in ladder)")
    p_conv.add_argument("--reference", type=int, default=401, metavar="N",
                        help="reference grid size (default: 401)")
    p_conv.add_argument("--probe-t", type=float, default=0.5, dest="probe_t",
                        metavar="T", help="probe time t* (default: 0.5)")
    p_conv.set_defaults(func=cmd_converge)

    p_cmp = subs.add_parser("compare", help="score a run against measured data")
    p_cmp.add_argument("data", metavar="CSV",
                       help="CSV file with a time,normalized_mass header")
    _add_config_args(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    p_list = subs.add_parser("presets", help="list built-in presets")
    p_list.set_defaults(func=cmd_presets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BoundaryRootError, NumericsError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (StepConvergenceError, EquilibrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
