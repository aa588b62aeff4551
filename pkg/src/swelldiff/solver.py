"""Staggered time integrator for the 1D swelling problem.

Each macro step advances both fields over the same time slab and iterates
them against each other until the stretch field settles:

1. solve the wall traction condition for the boundary stretch at both walls,
2. advance p by explicit stability-limited sub-steps with g frozen,
3. advance g node-by-node with a classical 4-stage explicit integration
   using the freshly advanced p,
4. repeat from 1 until the 2-norm between successive p iterates drops below
   the tolerance, then commit the slab.

The PDE advance is stability-limited, so the sub-step size adapts to the
largest nodal diffusivity estimate (1 - 1/p)(1/p)|dW/dp| each macro step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import advance_axial_stretch
from .exceptions import DomainError, StepConvergenceError
from .onedim import (LoadSchedule, NondimParams, State1D, g_rate, mass_ratio,
                     solve_boundary_p, tzz_sf, w_slope_p)


@dataclass(frozen=True)
class SolverConfig:
    """Numerical knobs of the staggered scheme."""

    dt_star: float = 0.025          # macro time step
    tolerance: float = 1e-4         # inner-iteration 2-norm tolerance on p
    max_inner_iters: int = 50
    pde_substep_safety: float = 0.4     # fraction of the explicit stability limit
    ode_substeps: int = 10          # sub-steps of the nodal g advance
    epsilon_floor: float = 1e-10    # p is kept at or above 1 + epsilon_floor

    def __post_init__(self):
        if self.dt_star <= 0.0:
            raise DomainError("SolverConfig.dt_star must be positive")
        if self.tolerance <= 0.0:
            raise DomainError("SolverConfig.tolerance must be positive")
        if self.max_inner_iters < 1:
            raise DomainError("SolverConfig.max_inner_iters must be >= 1")
        if not (0.0 < self.pde_substep_safety < 1.0):
            raise DomainError("SolverConfig.pde_substep_safety must be in (0, 1)")
        if self.ode_substeps < 1:
            raise DomainError("SolverConfig.ode_substeps must be >= 1")
        if not (0.0 < self.epsilon_floor < 1e-2):
            raise DomainError("SolverConfig.epsilon_floor out of range")


@dataclass(frozen=True)
class RunRecord:
    """Sampled history of a run plus per-step solver statistics."""

    times: np.ndarray           # sample times t*
    p_fields: np.ndarray        # (n_samples, n_nodes)
    g_fields: np.ndarray        # (n_samples, n_nodes)
    mass: np.ndarray            # mass ratio at each sample
    boundary_p: np.ndarray      # (n_samples, 2): p at the left/right wall
    inner_iterations: np.ndarray    # sweeps needed by each macro step
    floor_activations: np.ndarray   # sub-step floor clips in each macro step
    diagnostics: tuple[str, ...]

    @property
    def final_state(self) -> State1D:
        return State1D(float(self.times[-1]), self.p_fields[-1], self.g_fields[-1])


def _advance_g(g: np.ndarray, p: np.ndarray, dt: float, substeps: int,
               nd: NondimParams) -> np.ndarray:
    """Nodal natural-configuration advance, classical 4-stage explicit."""
    h = dt / substeps
    out = g.astype(float, copy=True)
    for _ in range(substeps):
        k1 = g_rate(p, out, nd)
        k2 = g_rate(p, out + 0.5 * h * k1, nd)
        k3 = g_rate(p, out + 0.5 * h * k2, nd)
        k4 = g_rate(p, out + h * k3, nd)
        out = out + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return out


def _substep_count(p: np.ndarray, g: np.ndarray, dz: float, dt: float,
                   nd: NondimParams, cfg: SolverConfig) -> int:
    mobility = (1.0 - 1.0 / p) / p
    diffusivity = float(np.max(mobility * np.abs(w_slope_p(p, g, nd))))
    if diffusivity <= 0.0:
        return 1
    dt_stable = cfg.pde_substep_safety * nd.beta2 * dz * dz / diffusivity
    return max(1, math.ceil(dt / dt_stable))


def _staggered_step(state: State1D, f_star: float, nd: NondimParams,
                    cfg: SolverConfig):
    """One macro step; returns (p_new, g_new, sweeps, floor_clips, diagnostics)."""
    dz = state.dz
    dt = cfg.dt_star
    eps = cfg.epsilon_floor
    p_old = state.p
    g_old = state.g
    g_cur = g_old
    p_prev = p_old
    diags: list[str] = []
    clips_total = 0
    residual = math.inf
    for sweep in range(1, cfg.max_inner_iters + 1):
        pb_left = solve_boundary_p(float(g_cur[0]), f_star, nd, diagnostics=diags)
        pb_right = solve_boundary_p(float(g_cur[-1]), f_star, nd, diagnostics=diags)
        p_work = np.array(p_old, dtype=float)
        p_work[0] = pb_left
        p_work[-1] = pb_right
        np.maximum(p_work, 1.0 + eps, out=p_work)
        n_sub = _substep_count(p_work, g_cur, dz, dt, nd, cfg)
        clips_total += advance_axial_stretch(
            p_work, np.asarray(g_cur, dtype=float), dt, n_sub, dz,
            nd.beta1, nd.beta2, nd.chi, nd.mu_p_star, nd.mu_G_star, eps)
        g_new = _advance_g(g_old, p_work, dt, cfg.ode_substeps, nd)
        residual = float(np.linalg.norm(p_work - p_prev))
        p_prev = p_work
        g_cur = g_new
        if residual < cfg.tolerance:
            return p_work, g_new, sweep, clips_total, diags
    raise StepConvergenceError(residual, state.t_star + dt, cfg.max_inner_iters)


def step(state: State1D, schedule: LoadSchedule, nd: NondimParams,
         cfg: SolverConfig) -> State1D:
    """Advance one macro step; the load is the schedule value at the new time."""
    t_new = state.t_star + cfg.dt_star
    f_star = schedule.force_at(t_new)
    p_new, g_new, _, _, _ = _staggered_step(state, f_star, nd, cfg)
    return State1D(t_new, p_new, g_new)


def run(initial: State1D, schedule: LoadSchedule, nd: NondimParams,
        cfg: SolverConfig, t_final: float, sample_every: int = 1) -> RunRecord:
    """March from the initial state until t* reaches ``t_final``.

    Samples the state, mass ratio and wall stretches every ``sample_every``
    macro steps; the initial and final states are always included.  A
    ``t_final`` at or before the initial time yields a record holding only
    the initial sample.
    """
    if sample_every < 1:
        raise DomainError("sample_every must be >= 1")
    state = initial
    times = [state.t_star]
    p_samples = [state.p]
    g_samples = [state.g]
    masses = [mass_ratio(state, nd)]
    boundary = [(float(state.p[0]), float(state.p[-1]))]
    inner: list[int] = []
    clips: list[int] = []
    diags: list[str] = []
    if np.any(initial.p < 1.0 + cfg.epsilon_floor):
        diags.append("initial stretch field at or below the floor; "
                     "lifted to 1 + epsilon_floor for evaluation")
    end_tol = 1e-9 * max(1.0, abs(t_final))
    k = 0
    while state.t_star < t_final - end_tol:
        t_new = state.t_star + cfg.dt_star
        f_star = schedule.force_at(t_new)
        p_new, g_new, sweeps, n_clips, step_diags = _staggered_step(
            state, f_star, nd, cfg)
        state = State1D(t_new, p_new, g_new)
        k += 1
        inner.append(sweeps)
        clips.append(n_clips)
        diags.extend(step_diags)
        final = not (state.t_star < t_final - end_tol)
        if k % sample_every == 0 or final:
            times.append(state.t_star)
            p_samples.append(state.p)
            g_samples.append(state.g)
            masses.append(mass_ratio(state, nd))
            boundary.append((float(state.p[0]), float(state.p[-1])))
    return RunRecord(
        times=np.asarray(times),
        p_fields=np.vstack(p_samples),
        g_fields=np.vstack(g_samples),
        mass=np.asarray(masses),
        boundary_p=np.asarray(boundary),
        inner_iterations=np.asarray(inner, dtype=int),
        floor_activations=np.asarray(clips, dtype=int),
        diagnostics=tuple(diags),
    )


def steady_state_oracle(nd: NondimParams, f_star: float = 0.0,
                        p_max: float = 50.0) -> tuple[float, float]:
    """Uniform equilibrium (p_eq, g_eq) under a constant wall load.

    Independent of the time stepper: the natural-configuration fixed point
    gives g = (mu_p*/mu_G*)^(1/4) sqrt(p) in closed form, and the remaining
    scalar traction equation is solved by bisection.  Refuses the degenerate
    elastic limit mu_G* = 0, whose fixed point runs away to infinite g.
    """
    if nd.mu_G_star <= 0.0:
        raise DomainError(
            "steady_state_oracle needs mu_G_star > 0; the elastic limit has "
            "no finite natural-configuration fixed point")
    if nd.mu_p_star <= 0.0:
        raise DomainError("steady_state_oracle needs mu_p_star > 0")
    scale = (nd.mu_p_star / nd.mu_G_star) ** 0.25

    def residual(p: float) -> float:
        return tzz_sf(p, scale * math.sqrt(p), nd) + f_star

    lo = 1.0 + 1e-9
    xs = 1.0 + np.geomspace(lo - 1.0, p_max - 1.0, 256)
    fs = np.array([residual(float(x)) for x in xs])
    change = np.flatnonzero(np.sign(fs[:-1]) != np.sign(fs[1:]))
    if change.size == 0:
        raise DomainError(
            f"no uniform equilibrium for p in ({lo:g}, {p_max:g}] at F*={f_star:g}")
    i = int(change[0])
    a, b = float(xs[i]), float(xs[i + 1])
    fa = float(fs[i])
    for _ in range(200):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        fm = residual(m)
        if fm == 0.0:
            a = b = m
            break
        if (fa < 0.0) == (fm < 0.0):
            a, fa = m, fm
        else:
            b = m
    p_eq = 0.5 * (a + b)
    return p_eq, scale * math.sqrt(p_eq)
