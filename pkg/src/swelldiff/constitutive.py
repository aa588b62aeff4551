"""Thermo-mechanical constitutive relations for a fluid-swollen viscoelastic solid.

The solid and the diffusing fluid co-occupy every material point as a binary
mixture.  The solid stores energy in two elastic contributions, one measured
from its reference configuration and one from an evolving stress-free natural
configuration, plus an entropic fluid-solid mixing part of Flory-Huggins type.
Dissipation enters through the drag between constituents and through the rate
at which the natural configuration rearranges.

All functions here work on diagonal tensors (see :mod:`swelldiff.kinematics`)
and dimensional quantities in SI units.  The dimensionless one-dimensional
problem lives in :mod:`swelldiff.onedim`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import DomainError
from .kinematics import DiagTensor3, elastic_stretch, invariants, jacobians


@dataclass(frozen=True)
class MaterialParams:
    """Dimensional material constants for the mixture.

    The two shear moduli vary linearly with temperature:
    ``mu_bar_X(theta) = (mu_X0 - mu_X1 * theta) / theta_ref``, with X = p for
    the natural-configuration response and X = G for the reference response.
    """

    rho_s_ref: float            # solid true (reference) density [kg/m^3]
    rho_f_ref: float            # fluid true (reference) density [kg/m^3]
    mu_p0: float                # natural-config modulus, constant part [Pa K]
    mu_p1: float                # natural-config modulus, theta slope [Pa]
    mu_G0: float                # reference modulus, constant part [Pa K]
    mu_G1: float                # reference modulus, theta slope [Pa]
    theta_ref: float            # reference temperature [K]
    c1: float = 0.0             # heat capacity slope [J/(kg K^2)]
    c2: float = 0.0             # heat capacity offset [J/(kg K)]
    psi_ref: float = 0.0        # free-energy offset at reference state [J/kg]
    eta_ref: float = 0.0        # entropy offset coefficient [J/(kg K)]
    chi: float = 0.0            # fluid-solid mixing interaction [-]
    molar_volume: float = 1.0e-4    # fluid molar volume [m^3/mol]
    gas_constant: float = 8.314462618  # [J/(mol K)]
    drag: float = 0.0           # fluid-solid momentum drag alpha [N s/m^4]
    config_drag: float = 1.0    # natural-configuration drag gamma [Pa s]
    fluid_viscosity: float = 0.0    # partial fluid viscosity nu [Pa s]
    theta_range: tuple[float, float] | None = None  # admissible temperatures [K]

    def __post_init__(self):
        for name in ("rho_s_ref", "rho_f_ref", "theta_ref", "molar_volume",
                     "gas_constant", "config_drag"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"MaterialParams.{name} must be positive")
        for name in ("drag", "fluid_viscosity"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"MaterialParams.{name} must be nonnegative")
        lo, hi = self.theta_range if self.theta_range is not None \
            else (self.theta_ref, self.theta_ref)
        if not (0.0 < lo <= hi):
            raise DomainError("MaterialParams.theta_range must satisfy 0 < lo <= hi")
        # The moduli are linear in theta, so endpoint checks cover the range.
        for theta in (lo, hi):
            if mu_bar_p(self, theta) < 0.0 or mu_bar_G(self, theta) < 0.0:
                raise DomainError(
                    f"shear modulus negative at theta={theta:g} K; "
                    "shrink theta_range or fix the modulus coefficients")


def mu_bar_p(params: MaterialParams, theta: float) -> float:
    """Natural-configuration shear modulus at temperature ``theta`` [Pa]."""
    return (params.mu_p0 - params.mu_p1 * theta) / params.theta_ref


def mu_bar_G(params: MaterialParams, theta: float) -> float:
    """Reference-configuration shear modulus at temperature ``theta`` [Pa]."""
    return (params.mu_G0 - params.mu_G1 * theta) / params.theta_ref


@dataclass(frozen=True)
class MixtureState:
    """Snapshot of the local mixture: kinematics, temperature, composition.

    Use :func:`mixture_state` to build one; it fills the dependent fields and
    enforces the volume-additivity constraint ``phi_s = 1/det(F)``.
    """

    f: DiagTensor3              # solid deformation gradient (diagonal)
    g: DiagTensor3              # natural-configuration map (diagonal)
    theta: float                # temperature [K]
    phi_s: float                # solid volume fraction
    rho_s: float                # solid partial density [kg/m^3]
    rho_f: float                # fluid partial density [kg/m^3]
    rho: float = field(default=0.0)  # mixture density [kg/m^3]

    def __post_init__(self):
        if self.theta <= 0.0:
            raise DomainError("MixtureState.theta must be positive")
        if not (0.0 < self.phi_s <= 1.0):
            raise DomainError(f"MixtureState.phi_s must lie in (0, 1], got {self.phi_s!r}")
        j = self.f.det
        if abs(self.phi_s * j - 1.0) > 1e-9:
            raise DomainError(
                f"volume additivity violated: phi_s * det(F) = {self.phi_s * j!r}")
        if abs(self.rho - (self.rho_s + self.rho_f)) > 1e-9 * max(1.0, self.rho):
            raise DomainError("mixture density must equal rho_s + rho_f")

    @property
    def phi_f(self) -> float:
        return 1.0 - self.phi_s


def mixture_state(params: MaterialParams, f: DiagTensor3, g: DiagTensor3,
                  theta: float) -> MixtureState:
    """Build a consistent :class:`MixtureState` from kinematics and temperature."""
    j = f.det
    if j < 1.0:
        raise DomainError(
            f"det(F) = {j!r} < 1: the solid cannot occupy more than the whole volume")
    phi_s = 1.0 / j
    rho_s = params.rho_s_ref * phi_s
    rho_f = params.rho_f_ref * (1.0 - phi_s)
    return MixtureState(f=f, g=g, theta=theta, phi_s=phi_s,
                        rho_s=rho_s, rho_f=rho_f, rho=rho_s + rho_f)


def _xlnx(x: float) -> float:
    """x * ln(x) extended continuously by 0 at x = 0."""
    return x * math.log(x) if x > 0.0 else 0.0


def _mixing_bracket(phi_s: float, chi: float) -> float:
    """(1 - phi_s) ln(1 - phi_s) - chi phi_s^2, finite at phi_s = 1."""
    return _xlnx(1.0 - phi_s) - chi * phi_s * phi_s


def _cauchy_green(state: MixtureState) -> tuple[DiagTensor3, DiagTensor3]:
    fe = elastic_stretch(state.f, state.g)
    b_p = DiagTensor3(fe.d1 * fe.d1, fe.d2 * fe.d2, fe.d3 * fe.d3)
    b_g = DiagTensor3(state.g.d1 ** 2, state.g.d2 ** 2, state.g.d3 ** 2)
    return b_p, b_g


def helmholtz(params: MaterialParams, state: MixtureState,
              dry_limit: bool = False) -> float:
    """Specific Helmholtz potential of the mixture [J/kg].

    Sum of a thermal part (quadratic-plus-logarithmic in temperature), two
    neo-Hookean elastic parts weighted by the temperature-dependent moduli,
    and the Flory-Huggins mixing part.

    Parameters
    ----------
    dry_limit : bool
        The mixing term degenerates as ``phi_s -> 1`` (no fluid).  With
        ``dry_limit=True`` the indeterminate ``x ln x`` factor is replaced by
        its limit 0; otherwise ``phi_s == 1`` raises :class:`DomainError`.
    """
    if state.phi_s >= 1.0 and not dry_limit:
        raise DomainError(
            "helmholtz is singular at phi_s = 1; pass dry_limit=True for the "
            "fluid-free limit")
    th, ths = state.theta, params.theta_ref
    dth = th - ths
    thermal = (params.psi_ref + (params.eta_ref + params.c2) * dth
               - 0.5 * params.c1 * dth * dth
               - params.c2 * th * math.log(th / ths))
    b_p, b_g = _cauchy_green(state)
    i_bp = b_p.trace
    i_bg = b_g.trace
    elastic = (mu_bar_G(params, th) * (i_bg - 3.0)
               + mu_bar_p(params, th) * (i_bp - 3.0)) / state.rho_s
    mixing = (params.gas_constant * th
              / (params.rho_f_ref * params.molar_volume * state.phi_s)
              * _mixing_bracket(state.phi_s, params.chi))
    return thermal + elastic + mixing


def entropy(params: MaterialParams, state: MixtureState,
            dry_limit: bool = False) -> float:
    """Specific entropy, the exact negative temperature derivative of
    :func:`helmholtz` at frozen kinematics and composition [J/(kg K)]."""
    if state.phi_s >= 1.0 and not dry_limit:
        raise DomainError(
            "entropy is singular at phi_s = 1; pass dry_limit=True for the "
            "fluid-free limit")
    th, ths = state.theta, params.theta_ref
    thermal = (-(params.eta_ref + params.c2) + params.c1 * (th - ths)
               + params.c2 * math.log(th / ths) + params.c2)
    b_p, b_g = _cauchy_green(state)
    elastic = (params.mu_G1 * (b_g.trace - 3.0)
               + params.mu_p1 * (b_p.trace - 3.0)) / (state.rho_s * ths)
    mixing = (-params.gas_constant
              / (params.rho_f_ref * params.molar_volume * state.phi_s)
              * _mixing_bracket(state.phi_s, params.chi))
    return thermal + elastic + mixing


def internal_energy(params: MaterialParams, state: MixtureState,
                    dry_limit: bool = False) -> float:
    """Specific internal energy, psi + theta * eta [J/kg]."""
    return (helmholtz(params, state, dry_limit)
            + state.theta * entropy(params, state, dry_limit))


def heat_capacity(params: MaterialParams, state: MixtureState) -> float:
    """Specific heat at constant kinematics, c1 * theta + c2 [J/(kg K)]."""
    return params.c1 * state.theta + params.c2


def _stress_core(params: MaterialParams, state: MixtureState,
                 leading: DiagTensor3) -> DiagTensor3:
    """Shared assembly for the configurational stress pair.

    ``leading`` is the distinguishing term (2 mu_bar_p B_p or 2 mu_bar_G B_G);
    the isotropic elastic and mixing terms are identical for both stresses.
    """
    if state.phi_s >= 1.0:
        raise DomainError("stress is singular at phi_s = 1 (no fluid present)")
    th = state.theta
    b_p, b_g = _cauchy_green(state)
    _, j_g, j_p = jacobians(state.f, state.g)
    pref_el = state.rho / state.rho_s
    iso = (mu_bar_p(params, th) * (b_p.trace - 3.0)
           + mu_bar_G(params, th) * (b_g.trace - 3.0))
    mix = (math.log(1.0 - state.phi_s) + state.phi_s
           + params.chi * state.phi_s * state.phi_s)
    pref_mix = (state.rho * params.gas_constant * th * j_p * j_g
                / (params.rho_f_ref * params.molar_volume))
    iso_total = pref_el * iso + pref_mix * mix
    return DiagTensor3(pref_el * leading.d1 + iso_total,
                       pref_el * leading.d2 + iso_total,
                       pref_el * leading.d3 + iso_total)


def stress_Tp(params: MaterialParams, state: MixtureState) -> DiagTensor3:
    """Configurational stress conjugate to the natural-configuration response [Pa]."""
    b_p, _ = _cauchy_green(state)
    return _stress_core(params, state, 2.0 * mu_bar_p(params, state.theta) * b_p)


def stress_TG(params: MaterialParams, state: MixtureState) -> DiagTensor3:
    """Configurational stress conjugate to the reference response [Pa]."""
    _, b_g = _cauchy_green(state)
    return _stress_core(params, state, 2.0 * mu_bar_G(params, state.theta) * b_g)


def partial_stress_solid(params: MaterialParams, state: MixtureState,
                         lam: float) -> DiagTensor3:
    """Solid partial Cauchy stress: constraint pressure share plus stress_Tp [Pa].

    ``lam`` is the mixture constraint multiplier, always supplied by the caller
    (it is determined by boundary conditions, not by the local state).
    """
    tp = stress_Tp(params, state)
    c = -lam * state.phi_s
    return DiagTensor3(tp.d1 + c, tp.d2 + c, tp.d3 + c)


def partial_stress_fluid(params: MaterialParams, state: MixtureState,
                         lam: float, d_f: DiagTensor3) -> DiagTensor3:
    """Fluid partial Cauchy stress: -lam phi_f I + nu D_f [Pa]."""
    c = -lam * state.phi_f
    nu = params.fluid_viscosity
    return DiagTensor3(c + nu * d_f.d1, c + nu * d_f.d2, c + nu * d_f.d3)


def interaction_force_1d(params: MaterialParams, state: MixtureState, lam: float,
                         dphi_s_dz: float, v_rel: float, dpsi_dz: float) -> float:
    """Force per volume the fluid exerts on the solid, 1D form [N/m^3].

    ``lam * dphi_s_dz - drag * v_rel + rho_f * dpsi_dz`` with all spatial
    gradients supplied by the caller.  The force on the fluid is the negation.
    """
    return lam * dphi_s_dz - params.drag * v_rel + state.rho_f * dpsi_dz


def natural_config_rate(params: MaterialParams, state: MixtureState) -> DiagTensor3:
    """Stretching rate D_G of the natural configuration set by the evolution law.

    D_G = (2 rho / (rho_s gamma)) (mu_bar_p B_p - mu_bar_G B_G), the rate at
    which stored elastic energy is traded against configurational drag.
    """
    th = state.theta
    b_p, b_g = _cauchy_green(state)
    c = 2.0 * state.rho / (state.rho_s * params.config_drag)
    mp = mu_bar_p(params, th)
    mg = mu_bar_G(params, th)
    return DiagTensor3(c * (mp * b_p.d1 - mg * b_g.d1),
                       c * (mp * b_p.d2 - mg * b_g.d2),
                       c * (mp * b_p.d3 - mg * b_g.d3))


# ---------------------------------------------------------------------------
# Incompressible single-constituent reduction (standard-linear-solid limit).
# With the fluid removed and det F = 1 the evolution law keeps only its
# deviatoric part and the stress carries an undetermined pressure.
# ---------------------------------------------------------------------------

def sls_evolution_rhs(params: MaterialParams, b_p: DiagTensor3, b_g: DiagTensor3,
                      theta: float | None = None) -> DiagTensor3:
    """Right-hand side (eta * D_G) of the incompressible natural-configuration
    evolution law: the deviator of 2 mu_bar_p B_p - 2 mu_bar_G B_G [Pa]."""
    for b in (b_p, b_g):
        if b.d1 <= 0.0 or b.d2 <= 0.0 or b.d3 <= 0.0:
            raise DomainError("sls_evolution_rhs: tensors must be positive definite")
    th = params.theta_ref if theta is None else theta
    mp = mu_bar_p(params, th)
    mg = mu_bar_G(params, th)
    iso = (2.0 / 3.0) * (mp * b_p.trace - mg * b_g.trace)
    return DiagTensor3(2.0 * (mp * b_p.d1 - mg * b_g.d1) - iso,
                       2.0 * (mp * b_p.d2 - mg * b_g.d2) - iso,
                       2.0 * (mp * b_p.d3 - mg * b_g.d3) - iso)


def sls_stress(params: MaterialParams, b_p: DiagTensor3, pressure: float,
               theta: float | None = None) -> DiagTensor3:
    """Cauchy stress of the incompressible reduction: pressure I + 2 mu_bar_p B_p."""
    th = params.theta_ref if theta is None else theta
    two_mp = 2.0 * mu_bar_p(params, th)
    return DiagTensor3(pressure + two_mp * b_p.d1,
                       pressure + two_mp * b_p.d2,
                       pressure + two_mp * b_p.d3)
