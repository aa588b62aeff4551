"""Dimensionless one-dimensional swelling problem on a slab.

A thin solid layer occupies Z in [-1, 1] in its dry reference configuration
and swells only through its thickness.  Two nodal fields describe the motion:

* ``p`` -- the axial stretch (det F of the solid); ``phi_s = 1/p``, so p = 1
  is dry and p > 1 is swollen,
* ``g`` -- the axial stretch of the evolving natural configuration.

The fluid content obeys a degenerate nonlinear diffusion equation driven by
the gradient of the combined potential W = tzz_sf + psi_tilde; the natural
configuration relaxes by a local ODE in t.  Both walls carry a traction
condition tzz_sf = -F*(t) for a prescribed load history.

Everything here is nondimensional: stresses are scaled by R theta / V0, time
by the diffusion time of the layer, lengths by its half-thickness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import BoundaryRootError, DomainError, NumericsError


@dataclass(frozen=True)
class NondimParams:
    """Dimensionless groups of the slab problem."""

    beta1: float        # solid/fluid reference density ratio
    beta2: float        # diffusion number (drag * L^2 / (mixing pressure * time))
    chi: float          # Flory mixing interaction
    mu_p_star: float    # natural-config modulus / mixing pressure
    mu_G_star: float    # reference modulus / mixing pressure
    gamma_star: float   # natural-configuration drag / (mixing pressure * time)

    def __post_init__(self):
        for name in ("beta1", "beta2", "gamma_star"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"NondimParams.{name} must be positive")
        for name in ("mu_p_star", "mu_G_star"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"NondimParams.{name} must be nonnegative")
        if not math.isfinite(self.chi):
            raise DomainError("NondimParams.chi must be finite")


@dataclass(frozen=True)
class LoadSchedule:
    """Piecewise-constant axial load history.

    ``segments`` is a sequence of (t_end, F_star) pairs with strictly
    increasing end times; segment k applies for t in (t_end[k-1], t_end[k]],
    and the last value holds beyond the final end time.  F_star > 0 is a
    compressive traction on both walls.

    ``p_inf_star`` is the ambient fluid pressure at the walls.  It acts
    equally on both constituents and cancels from the swelling dynamics, so it
    is carried only for reporting.
    """

    segments: tuple[tuple[float, float], ...]
    p_inf_star: float = 0.0

    def __post_init__(self):
        if len(self.segments) == 0:
            raise DomainError("LoadSchedule needs at least one segment")
        prev = 0.0
        for k, (t_end, f_star) in enumerate(self.segments):
            if not (math.isfinite(t_end) and math.isfinite(f_star)):
                raise DomainError(f"LoadSchedule segment {k} has non-finite entries")
            if t_end <= prev:
                raise DomainError("LoadSchedule end times must be strictly increasing")
            prev = t_end
        if not math.isfinite(self.p_inf_star):
            raise DomainError("LoadSchedule.p_inf_star must be finite")

    @staticmethod
    def free_swell(t_end: float = 1.5) -> "LoadSchedule":
        return LoadSchedule(((float(t_end), 0.0),))

    def force_at(self, t_star: float) -> float:
        # tolerance so steps landing on a segment boundary (within float
        # accumulation error) still belong to the earlier segment
        tol = 1e-9 * max(1.0, abs(t_star))
        for t_end, f_star in self.segments:
            if t_star <= t_end + tol:
                return f_star
        return self.segments[-1][1]


@dataclass(frozen=True)
class State1D:
    """Immutable nodal snapshot of the two fields at one instant."""

    t_star: float
    p: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        g = np.array(self.g, dtype=float)
        if p.ndim != 1 or g.shape != p.shape or p.size < 3:
            raise DomainError("State1D fields must be 1D arrays of equal size >= 3")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(g))):
            raise DomainError("State1D fields must be finite")
        if np.any(p < 1.0):
            raise DomainError("State1D: p must be >= 1 at every node")
        if np.any(g <= 0.0):
            raise DomainError("State1D: g must be positive at every node")
        p.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "g", g)

    @staticmethod
    def uniform(n: int, p: float = 1.0, g: float = 1.0,
                t_star: float = 0.0) -> "State1D":
        return State1D(t_star, np.full(n, float(p)), np.full(n, float(g)))

    @property
    def n(self) -> int:
        return self.p.size

    @property
    def dz(self) -> float:
        return 2.0 / (self.n - 1)

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(-1.0, 1.0, self.n)


def _promote(x):
    a = np.asarray(x, dtype=float)
    return a, a.ndim == 0


def _demote(a, scalar):
    return float(a) if scalar else a


def tzz_sf(p, g, nd: NondimParams):
    """Axial component of the combined (solid + fluid) stress, dimensionless.

    Elastic part from both stored-energy contributions plus the osmotic
    mixing part.  Requires p > 1 strictly; the mixing term diverges
    logarithmically as the dry state is approached.
    """
    p, scalar_p = _promote(p)
    g, scalar_g = _promote(g)
    if np.any(p <= 1.0):
        raise DomainError("tzz_sf requires p > 1 (swollen state)")
    if np.any(g <= 0.0):
        raise DomainError("tzz_sf requires g > 0")
    pg2 = (p / g) ** 2
    elastic = (2.0 * nd.mu_p_star * pg2 + nd.mu_p_star * (pg2 - 1.0)
               + nd.mu_G_star * (g * g - 1.0))
    mech = (1.0 + (p - 1.0) / nd.beta1) * elastic
    mix = (p + nd.beta1 - 1.0) * (np.log(1.0 - 1.0 / p) + 1.0 / p + nd.chi / p ** 2)
    return _demote(mech + mix, scalar_p and scalar_g)


def psi_tilde(p, g, nd: NondimParams):
    """Dimensionless swelling potential (fluid free energy per reference volume).

    Its gradient, together with the stress gradient, drives the fluid flux.
    Finite at p = 1 by the continuous extension x ln x -> 0.
    """
    p, scalar_p = _promote(p)
    g, scalar_g = _promote(g)
    if np.any(p < 1.0):
        raise DomainError("psi_tilde requires p >= 1")
    if np.any(g <= 0.0):
        raise DomainError("psi_tilde requires g > 0")
    pg2 = (p / g) ** 2
    elastic = (p / nd.beta1) * (nd.mu_G_star * (g * g - 1.0)
                                + nd.mu_p_star * (pg2 - 1.0))
    u = 1.0 - 1.0 / p
    xlnx = np.zeros_like(u)
    pos = u > 0.0
    xlnx[pos] = u[pos] * np.log(u[pos])
    mixing = p * xlnx - nd.chi / p
    return _demote(elastic + mixing, scalar_p and scalar_g)


def w_total(p, g, nd: NondimParams):
    """Driving potential W = tzz_sf + psi_tilde."""
    return tzz_sf(p, g, nd) + psi_tilde(p, g, nd)


def w_slope_p(p, g, nd: NondimParams):
    """Analytic dW/dp at fixed g.  Used for the explicit-step diffusivity bound.

    Singular like 1/(p-1) as p -> 1; consumers multiply by the mobility
    (1 - 1/p)/p which cancels the singularity.
    """
    p, scalar_p = _promote(p)
    g, scalar_g = _promote(g)
    if np.any(p <= 1.0):
        raise DomainError("w_slope_p requires p > 1")
    b1, chi, mup, mug = nd.beta1, nd.chi, nd.mu_p_star, nd.mu_G_star
    g2 = g * g
    pg2 = p * p / g2
    lg = np.log(1.0 - 1.0 / p)
    ell = lg + 1.0 / p + chi / p ** 2
    dell = 1.0 / (p * (p - 1.0)) - 1.0 / p ** 2 - 2.0 * chi / p ** 3
    elastic = 3.0 * mup * pg2 - mup + mug * (g2 - 1.0)
    d_tzz = (elastic / b1
             + (1.0 + (p - 1.0) / b1) * 6.0 * mup * p / g2
             + ell + (p + b1 - 1.0) * dell)
    d_psi = (mug * (g2 - 1.0) / b1 + mup * (3.0 * pg2 - 1.0) / b1
             + lg + 1.0 / p + chi / p ** 2)
    return _demote(d_tzz + d_psi, scalar_p and scalar_g)


def g_rate(p, g, nd: NondimParams):
    """Local relaxation rate dg/dt of the natural-configuration stretch."""
    p, scalar_p = _promote(p)
    g, scalar_g = _promote(g)
    if np.any(g <= 0.0):
        raise DomainError("g_rate requires g > 0")
    pg2 = (p / g) ** 2
    rate = (2.0 * g / nd.gamma_star) * (1.0 + (p - 1.0) / nd.beta1) \
        * (nd.mu_p_star * pg2 - nd.mu_G_star * g * g)
    return _demote(rate, scalar_p and scalar_g)


def pde_rhs(state: State1D, nd: NondimParams, eps: float = 1e-10) -> np.ndarray:
    """Time derivative of p at the interior nodes.

    Second-order central scheme on the uniform grid: the conservative-looking
    term uses face fluxes with arithmetic-mean mobility
    ``q_{i+1/2} = 0.5 (A_i + A_{i+1}) (W_{i+1} - W_i) / dZ`` where
    ``A = (1 - 1/p)/p``; the advective-looking term uses centered first
    differences of p and W.  Nodes are floored at p = 1 + eps before W is
    evaluated; the (p - 1) and A factors then quench the log divergence, so a
    field with dry nodes still yields finite rates.

    Returns an array of length n - 2 (boundary nodes are Dirichlet and are
    handled by the solver).
    """
    p = np.maximum(state.p, 1.0 + eps)
    g = state.g
    dzz = state.dz
    w = tzz_sf(p, g, nd) + psi_tilde(p, g, nd)
    if not np.all(np.isfinite(w)):
        bad = int(np.flatnonzero(~np.isfinite(w))[0])
        raise NumericsError("non-finite potential during pde_rhs", node=bad)
    a = (1.0 - 1.0 / p) / p
    pc = p[1:-1]
    dp_c = (p[2:] - p[:-2]) / (2.0 * dzz)
    dw_c = (w[2:] - w[:-2]) / (2.0 * dzz)
    advective = a[1:-1] / pc * dp_c * dw_c
    flux_r = 0.5 * (a[1:-1] + a[2:]) * (w[2:] - w[1:-1]) / dzz
    flux_l = 0.5 * (a[:-2] + a[1:-1]) * (w[1:-1] - w[:-2]) / dzz
    conservative = (pc - 1.0) * (flux_r - flux_l) / dzz
    rhs = (advective + conservative) / nd.beta2
    if not np.all(np.isfinite(rhs)):
        bad = int(np.flatnonzero(~np.isfinite(rhs))[0]) + 1
        raise NumericsError("non-finite rate during pde_rhs", node=bad)
    return rhs


def fluid_velocity(state: State1D, nd: NondimParams, eps: float = 1e-10) -> np.ndarray:
    """Dimensionless fluid velocity at every node.

    v = -(1/beta2) (1 - 1/p)(1/p) dW/dZ with the same centered interior
    differences as :func:`pde_rhs` and second-order one-sided differences at
    the walls.
    """
    p = np.maximum(state.p, 1.0 + eps)
    w = tzz_sf(p, state.g, nd) + psi_tilde(p, state.g, nd)
    dzz = state.dz
    dw = np.empty_like(w)
    dw[1:-1] = (w[2:] - w[:-2]) / (2.0 * dzz)
    dw[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * dzz)
    dw[-1] = (3.0 * w[-1] - 4.0 * w[-2] + w[-3]) / (2.0 * dzz)
    return -(1.0 - 1.0 / p) / p * dw / nd.beta2


def boundary_residual(p_b: float, g_b: float, f_star: float, nd: NondimParams) -> float:
    """Traction mismatch tzz_sf(p_b, g_b) + F* at a wall; zero at the root."""
    return tzz_sf(p_b, g_b, nd) + f_star


def solve_boundary_p(g_b: float, f_star: float, nd: NondimParams,
                     p_max: float = 50.0,
                     diagnostics: list[str] | None = None) -> float:
    """Boundary stretch satisfying the wall traction condition.

    Scans (1 + 1e-9, p_max] geometrically in p - 1, takes the bracket of the
    first sign change (appending a diagnostic when several exist), bisects it
    down, then polishes with safeguarded secant steps until the residual
    magnitude is at most 1e-12.
    """
    lo = 1.0 + 1e-9
    xs = 1.0 + np.geomspace(lo - 1.0, p_max - 1.0, 256)
    fs = tzz_sf(xs, g_b, nd) + f_star
    if not np.all(np.isfinite(fs)):
        raise NumericsError("non-finite residual while bracketing boundary root")
    zero_hits = np.flatnonzero(fs == 0.0)
    if zero_hits.size:
        return float(xs[zero_hits[0]])
    change = np.flatnonzero(np.sign(fs[:-1]) != np.sign(fs[1:]))
    if change.size == 0:
        raise BoundaryRootError(
            f"no sign change of the traction residual for p in ({lo:g}, {p_max:g}] "
            f"at g={g_b:g}, F*={f_star:g}")
    if change.size > 1 and diagnostics is not None:
        diagnostics.append(
            f"boundary residual has {change.size} sign changes at g={g_b:g}, "
            f"F*={f_star:g}; taking the smallest root")
    i = int(change[0])
    a, b = float(xs[i]), float(xs[i + 1])
    fa = float(fs[i])
    for _ in range(200):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        fm = boundary_residual(m, g_b, f_star, nd)
        if fm == 0.0:
            return m
        if (fa < 0.0) == (fm < 0.0):
            a, fa = m, fm
        else:
            b = m
        if b - a < 1e-14 * b:
            break
    # secant polish inside the final bracket
    x0, x1 = a, b
    f0 = boundary_residual(x0, g_b, f_star, nd)
    f1 = boundary_residual(x1, g_b, f_star, nd)
    best_x, best_f = (x0, f0) if abs(f0) < abs(f1) else (x1, f1)
    for _ in range(30):
        if abs(best_f) <= 1e-12:
            break
        denom = f1 - f0
        x2 = x1 - f1 * (x1 - x0) / denom if denom != 0.0 else 0.5 * (a + b)
        if not (a <= x2 <= b):
            x2 = 0.5 * (a + b)
        f2 = boundary_residual(x2, g_b, f_star, nd)
        if abs(f2) < abs(best_f):
            best_x, best_f = x2, f2
        x0, f0, x1, f1 = x1, f1, x2, f2
        if x0 == x1:
            break
    return best_x


def mass_ratio(state: State1D, nd: NondimParams) -> float:
    """Current mixture mass over dry solid mass, trapezoid rule over Z.

    Equals 1 on a dry slab and (p + beta1 - 1)/beta1 on a uniform one.
    """
    integrand = state.p + nd.beta1 - 1.0
    return float(np.trapezoid(integrand, dx=state.dz) / (2.0 * nd.beta1))


def normalized_mass(masses) -> np.ndarray:
    """Rescale a mass-ratio history to [0, 1] between its first and last samples."""
    m = np.asarray(masses, dtype=float)
    if m.ndim != 1 or m.size < 2:
        raise DomainError("normalized_mass needs a 1D history with >= 2 samples")
    span = m[-1] - m[0]
    if span == 0.0:
        raise DomainError("normalized_mass undefined: mass never changed")
    return (m - m[0]) / span
