"""Canned experiments: solvent presets, uptake curves, grid studies, data comparison.

The presets reproduce the three solvent/polymer pairs the model was fitted
against plus a load-cycle variant; each carries the dimensionless groups, the
grid and stepping defaults, and the characteristic diffusion time needed to
map t* back to laboratory time.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import ConfigError, DomainError, EquilibrationError
from .onedim import LoadSchedule, NondimParams, State1D, normalized_mass
from .solver import RunRecord, SolverConfig, run

FLATNESS_TOL = 1e-5     # mass-ratio change between the last two samples


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    description: str
    nd: NondimParams
    n_points: int = 301
    dt_star: float = 0.025
    tolerance: float = 1e-4
    t_final: float = 1.5
    schedule: LoadSchedule = LoadSchedule.free_swell(1.5)
    characteristic_time: float = 1.0    # laboratory duration of t* = 1
    time_unit: str = "t*"

    def solver_config(self) -> SolverConfig:
        return SolverConfig(dt_star=self.dt_star, tolerance=self.tolerance)


_DMSO_ND = NondimParams(beta1=1.3, beta2=0.018, chi=0.425,
                        mu_p_star=0.1, mu_G_star=0.1, gamma_star=20.0)

_PRESETS = {
    "dmso-pmda-oda": ExperimentPreset(
        name="dmso-pmda-oda",
        description="DMSO diffusing into a PMDA-ODA polyimide film",
        nd=_DMSO_ND,
        characteristic_time=10500.0, time_unit="min"),
    "nmp-pmda-oda": ExperimentPreset(
        name="nmp-pmda-oda",
        description="NMP diffusing into a PMDA-ODA polyimide film",
        nd=NondimParams(beta1=1.4, beta2=0.016, chi=0.6,
                        mu_p_star=0.1, mu_G_star=0.1, gamma_star=20.0),
        characteristic_time=245.0, time_unit="min"),
    "water-hfpe": ExperimentPreset(
        name="water-hfpe",
        description="water diffusing into an HFPE-II-52 polyimide film",
        nd=_DMSO_ND,
        characteristic_time=2800.0, time_unit="s"),
    "compress-cycle": ExperimentPreset(
        name="compress-cycle",
        description="free swell, then a held compressive load, then release",
        nd=_DMSO_ND,
        schedule=LoadSchedule(((0.5, 0.0), (1.0, 1.0), (1.5, 0.0))),
        characteristic_time=10500.0, time_unit="min"),
}


def preset_names() -> tuple[str, ...]:
    return tuple(_PRESETS)


def preset(name: str) -> ExperimentPreset:
    try:
        return _PRESETS[name]
    except KeyError:
        raise ConfigError(
            "preset", f"unknown preset {name!r}; choose from {', '.join(_PRESETS)}"
        ) from None


@dataclass(frozen=True)
class UptakeResult:
    """Mass-uptake curve of a run, normalized to its own plateau."""

    t_star: np.ndarray
    mass: np.ndarray
    normalized: np.ndarray
    record: RunRecord


def run_mass_uptake(exp: ExperimentPreset, t_final: float | None = None,
                    sample_every: int = 1) -> UptakeResult:
    """Run a preset and return its normalized mass-uptake curve.

    The plateau mass is taken from the final sample, so the curve ends at 1
    by construction; a guard rejects runs whose mass is still drifting by
    more than ``FLATNESS_TOL`` between the last two samples.
    """
    horizon = exp.t_final if t_final is None else float(t_final)
    record = run(State1D.uniform(exp.n_points), exp.schedule, exp.nd,
                 exp.solver_config(), horizon, sample_every)
    if record.mass.size < 2:
        raise EquilibrationError("uptake run produced fewer than two samples")
    drift = abs(float(record.mass[-1] - record.mass[-2]))
    if drift >= FLATNESS_TOL:
        raise EquilibrationError(
            f"mass curve still drifting at t*={horizon:g} "
            f"({drift:.2e} per sample >= {FLATNESS_TOL:g}); rerun with a "
            "longer t_final before normalizing")
    return UptakeResult(t_star=record.times, mass=record.mass,
                        normalized=normalized_mass(record.mass), record=record)


@dataclass(frozen=True)
class ConvergenceReport:
    """Probe-point errors of a family of grids against a reference grid."""

    grids: tuple[int, ...]
    errors: np.ndarray
    probe_values: np.ndarray
    reference: int
    reference_value: float
    probe_z: float
    probe_t: float
    dt_star: float

    def monotone_within(self, band: float = 0.05) -> bool:
        """True when errors never rise by more than ``band`` between grids."""
        e = self.errors
        return bool(np.all(e[1:] <= e[:-1] * (1.0 + band)))


def default_convergence_grids() -> tuple[int, ...]:
    return tuple(range(5, 346, 10)) + (351,)


def _probe(nd: NondimParams, schedule: LoadSchedule, n: int, dt_star: float,
           tolerance: float, probe_z: float, probe_t: float) -> float:
    cfg = SolverConfig(dt_star=dt_star, tolerance=tolerance)
    record = run(State1D.uniform(n), schedule, nd, cfg, probe_t)
    state = record.final_state
    return float(np.interp(probe_z, state.grid, state.p))


def run_convergence_study(nd: NondimParams, schedule: LoadSchedule,
                          grids: tuple[int, ...] | None = None,
                          reference: int = 401,
                          probe_z: float = 0.0, probe_t: float = 0.5,
                          dt_star: float = 0.025,
                          tolerance: float = 1e-4) -> ConvergenceReport:
    """Fixed-time-step spatial refinement study at a single probe point.

    Every grid (and the finer reference grid) is run to ``probe_t`` with the
    same macro step, and the stretch at ``probe_z`` is compared against the
    reference value.  The macro step is shared, so the splitting error is
    common to all runs and the probe errors isolate the spatial scheme.
    """
    gs = default_convergence_grids() if grids is None else tuple(int(n) for n in grids)
    if len(gs) == 0:
        raise DomainError("run_convergence_study needs at least one grid")
    for n in gs:
        if n < 3:
            raise DomainError(f"grid size {n} too small (need >= 3 nodes)")
    if reference <= max(gs):
        raise DomainError("reference grid must be finer than every study grid")
    ref_value = _probe(nd, schedule, reference, dt_star, tolerance, probe_z, probe_t)
    values = np.array([
        _probe(nd, schedule, n, dt_star, tolerance, probe_z, probe_t) for n in gs])
    return ConvergenceReport(
        grids=gs, errors=np.abs(values - ref_value), probe_values=values,
        reference=reference, reference_value=ref_value,
        probe_z=probe_z, probe_t=probe_t, dt_star=dt_star)


@dataclass(frozen=True)
class CurveComparison:
    rmse: float
    max_abs_dev: float
    n_points: int


def compare_external_curve(sim_times, sim_values, csv_path) -> CurveComparison:
    """Compare a simulated curve against measured points from a CSV file.

    The file must have a ``time,normalized_mass`` header with times in the
    same units as ``sim_times`` (for presets: laboratory time, i.e. t* scaled
    by the characteristic time).  The simulated curve is interpolated onto
    the external times that fall inside the simulated window.  Informational
    only; nothing in the package gates on the result.
    """
    sim_t = np.asarray(sim_times, dtype=float)
    sim_v = np.asarray(sim_values, dtype=float)
    if sim_t.ndim != 1 or sim_t.shape != sim_v.shape or sim_t.size < 2:
        raise DomainError("simulated curve needs matching 1D arrays, >= 2 samples")
    ext_t: list[float] = []
    ext_v: list[float] = []
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        names = reader.fieldnames or []
        if "time" not in names or "normalized_mass" not in names:
            raise DomainError(
                f"{csv_path}: expected a 'time,normalized_mass' header, got {names}")
        for row in reader:
            try:
                ext_t.append(float(row["time"]))
                ext_v.append(float(row["normalized_mass"]))
            except (TypeError, ValueError) as exc:
                raise DomainError(f"{csv_path}: non-numeric row {row!r}") from exc
    if len(ext_t) < 2:
        raise DomainError(f"{csv_path}: need at least two data points")
    t = np.asarray(ext_t)
    if np.any(np.diff(t) <= 0.0):
        raise DomainError(f"{csv_path}: times must be strictly increasing")
    inside = (t >= sim_t[0]) & (t <= sim_t[-1])
    if not np.any(inside):
        raise DomainError(
            f"{csv_path}: no data points inside the simulated window "
            f"[{sim_t[0]:g}, {sim_t[-1]:g}]")
    sim_on_ext = np.interp(t[inside], sim_t, sim_v)
    dev = sim_on_ext - np.asarray(ext_v)[inside]
    return CurveComparison(
        rmse=float(math.sqrt(np.mean(dev * dev))),
        max_abs_dev=float(np.max(np.abs(dev))),
        n_points=int(np.count_nonzero(inside)))


def with_horizon(exp: ExperimentPreset, t_final: float) -> ExperimentPreset:
    """Copy of a preset with a different horizon (schedule semantics keep the
    last load value beyond its final segment)."""
    return replace(exp, t_final=float(t_final))
