"""Solvent diffusion through a swelling viscoelastic film.

A mixture-theory model in which the solid carries two elastic responses, one
measured from the reference configuration and one from an evolving natural
configuration, and the fluid moves by a mixing-driven flux.  The package has
three layers: pointwise constitutive theory (``kinematics``, ``constitutive``),
its uniaxial reduction and spatial discretization (``onedim``), and the
time integrator plus canned experiments on top (``solver``, ``experiments``,
``cli``).
"""

from .constitutive import (
    MaterialParams,
    MixtureState,
    entropy,
    heat_capacity,
    helmholtz,
    internal_energy,
    interaction_force_1d,
    mixture_state,
    natural_config_rate,
    partial_stress_fluid,
    partial_stress_solid,
    sls_evolution_rhs,
    sls_stress,
    stress_TG,
    stress_Tp,
)
from .exceptions import (
    BoundaryRootError,
    ConfigError,
    DomainError,
    EquilibrationError,
    NumericsError,
    StepConvergenceError,
    SwellDiffError,
)
from .experiments import (
    ConvergenceReport,
    CurveComparison,
    ExperimentPreset,
    UptakeResult,
    compare_external_curve,
    default_convergence_grids,
    preset,
    preset_names,
    run_convergence_study,
    run_mass_uptake,
    with_horizon,
)
from .kinematics import DiagTensor3, elastic_stretch, invariants, jacobians
from .onedim import (
    LoadSchedule,
    NondimParams,
    State1D,
    boundary_residual,
    fluid_velocity,
    mass_ratio,
    normalized_mass,
    pde_rhs,
    psi_tilde,
    solve_boundary_p,
    tzz_sf,
    w_total,
)
from .solver import RunRecord, SolverConfig, run, steady_state_oracle

__version__ = "0.1.0"

__all__ = [
    "BoundaryRootError",
    "ConfigError",
    "ConvergenceReport",
    "CurveComparison",
    "DiagTensor3",
    "DomainError",
    "EquilibrationError",
    "ExperimentPreset",
    "LoadSchedule",
    "MaterialParams",
    "MixtureState",
    "NondimParams",
    "NumericsError",
    "RunRecord",
    "SolverConfig",
    "State1D",
    "StepConvergenceError",
    "SwellDiffError",
    "UptakeResult",
    "boundary_residual",
    "compare_external_curve",
    "default_convergence_grids",
    "elastic_stretch",
    "entropy",
    "fluid_velocity",
    "heat_capacity",
    "helmholtz",
    "interaction_force_1d",
    "internal_energy",
    "invariants",
    "jacobians",
    "mass_ratio",
    "mixture_state",
    "natural_config_rate",
    "normalized_mass",
    "partial_stress_fluid",
    "partial_stress_solid",
    "pde_rhs",
    "preset",
    "preset_names",
    "psi_tilde",
    "run",
    "run_convergence_study",
    "run_mass_uptake",
    "sls_evolution_rhs",
    "sls_stress",
    "solve_boundary_p",
    "steady_state_oracle",
    "stress_TG",
    "stress_Tp",
    "tzz_sf",
    "w_total",
    "with_horizon",
]
