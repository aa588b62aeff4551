"""Dimensionless slab problem: potentials, spatial operator, boundary root,
mass accounting."""

import numpy as np
import pytest

from swelldiff import (
    BoundaryRootError,
    DomainError,
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
from swelldiff.onedim import g_rate, w_slope_p

DMSO = NondimParams(beta1=1.3, beta2=0.018, chi=0.425,
                    mu_p_star=0.1, mu_G_star=0.1, gamma_star=20.0)

# boundary stretch for F* = 0 at g = 1, frozen from the standalone
# root-finding script written before the solver existed
P_BOUNDARY_FREE_G1 = 1.367990988286482


class TestNondimParams:
    def test_rejects_nonpositive_groups(self):
        with pytest.raises(DomainError):
            NondimParams(beta1=0.0, beta2=0.018, chi=0.425,
                         mu_p_star=0.1, mu_G_star=0.1, gamma_star=20.0)
        with pytest.raises(DomainError):
            NondimParams(beta1=1.3, beta2=-1.0, chi=0.425,
                         mu_p_star=0.1, mu_G_star=0.1, gamma_star=20.0)

    def test_allows_zero_moduli(self):
        nd = NondimParams(beta1=1.3, beta2=0.018, chi=0.425,
                          mu_p_star=0.0, mu_G_star=0.0, gamma_star=20.0)
        assert nd.mu_p_star == 0.0


class TestLoadSchedule:
    def test_hold_last_semantics(self):
        sched = LoadSchedule(((0.5, 0.0), (1.0, 1.0), (1.5, 0.0)))
        assert sched.force_at(0.2) == 0.0
        assert sched.force_at(0.5) == 0.0
        assert sched.force_at(0.5 + 1e-12) == 0.0   # boundary tolerance
        assert sched.force_at(0.6) == 1.0
        assert sched.force_at(1.0) == 1.0
        assert sched.force_at(1.2) == 0.0
        assert sched.force_at(99.0) == 0.0

    def test_requires_increasing_end_times(self):
        with pytest.raises(DomainError):
            LoadSchedule(((1.0, 0.0), (0.5, 1.0)))
        with pytest.raises(DomainError):
            LoadSchedule(())

    def test_free_swell(self):
        sched = LoadSchedule.free_swell(2.0)
        assert sched.segments == ((2.0, 0.0),)
        assert sched.force_at(1.0) == 0.0


class TestState1D:
    def test_uniform_and_grid(self):
        st = State1D.uniform(5, p=1.2, g=1.1)
        assert st.n == 5
        assert st.dz == pytest.approx(0.5)
        np.testing.assert_allclose(st.grid, [-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_fields_read_only(self):
        st = State1D.uniform(5)
        with pytest.raises(ValueError):
            st.p[0] = 2.0

    def test_rejects_unswollen_or_degenerate(self):
        with pytest.raises(DomainError):
            State1D(0.0, np.array([1.0, 0.9, 1.0]), np.ones(3))
        with pytest.raises(DomainError):
            State1D(0.0, np.ones(3), np.array([1.0, 0.0, 1.0]))
        with pytest.raises(DomainError):
            State1D(0.0, np.ones(2), np.ones(2))


class TestPotentials:
    def test_tzz_double_coding(self):
        p, g = 2.0, 1.1
        nd = DMSO
        pg2 = (p / g) ** 2
        elastic = nd.mu_p_star * (3.0 * pg2 - 1.0) + nd.mu_G_star * (g * g - 1.0)
        mech = (1.0 + (p - 1.0) / nd.beta1) * elastic
        mix = (p + nd.beta1 - 1.0) * (np.log(1.0 - 1.0 / p) + 1.0 / p
                                      + nd.chi / p ** 2)
        assert tzz_sf(p, g, nd) == pytest.approx(mech + mix, rel=1e-14)

    def test_tzz_rejects_dry_state(self):
        with pytest.raises(DomainError):
            tzz_sf(1.0, 1.0, DMSO)

    def test_psi_tilde_at_dry_reference(self):
        # p = 1, g = 1: elastic and entropic terms vanish, -chi/p survives
        assert psi_tilde(1.0, 1.0, DMSO) == pytest.approx(-0.425)

    def test_psi_tilde_double_coding(self):
        p, g = 3.0, 1.15
        nd = DMSO
        pg2 = (p / g) ** 2
        elastic = (p / nd.beta1) * (nd.mu_G_star * (g * g - 1.0)
                                    + nd.mu_p_star * (pg2 - 1.0))
        u = 1.0 - 1.0 / p
        mixing = p * u * np.log(u) - nd.chi / p
        assert psi_tilde(p, g, nd) == pytest.approx(elastic + mixing, rel=1e-14)

    def test_w_total_is_sum(self):
        p = np.array([1.2, 1.5, 2.0])
        g = np.array([1.0, 1.1, 1.2])
        np.testing.assert_allclose(
            w_total(p, g, DMSO), tzz_sf(p, g, DMSO) + psi_tilde(p, g, DMSO))

    def test_w_slope_matches_finite_difference(self):
        h = 1e-6
        for p, g in [(1.2, 1.0), (1.5, 1.1), (2.5, 1.3), (1.05, 0.9)]:
            fd = (w_total(p + h, g, DMSO) - w_total(p - h, g, DMSO)) / (2.0 * h)
            assert w_slope_p(p, g, DMSO) == pytest.approx(fd, rel=1e-6)

    def test_mobility_cancels_slope_singularity(self):
        # (1 - 1/p)/p * dW/dp stays bounded and tends to beta1 at the dry state
        for delta in (1e-6, 1e-8, 1e-10):
            p = 1.0 + delta
            a = (1.0 - 1.0 / p) / p
            assert a * w_slope_p(p, 1.0, DMSO) == pytest.approx(DMSO.beta1, rel=1e-4)

    def test_g_rate_fixed_point_for_equal_moduli(self):
        # with mu_p* = mu_G*, g = sqrt(p) makes both stored responses agree
        for p in (1.1, 1.4, 2.0):
            assert g_rate(p, np.sqrt(p), DMSO) == pytest.approx(0.0, abs=1e-15)

    def test_g_rate_double_coding(self):
        p, g = 1.5, 1.1
        nd = DMSO
        expected = (2.0 * g / nd.gamma_star) * (1.0 + (p - 1.0) / nd.beta1) \
            * (nd.mu_p_star * (p / g) ** 2 - nd.mu_G_star * g * g)
        assert g_rate(p, g, nd) == pytest.approx(expected, rel=1e-14)
        assert g_rate(p, 1.0, nd) > 0.0     # swollen state drives g upward


class TestSpatialOperator:
    def test_uniform_state_is_stationary(self):
        st = State1D.uniform(21, p=1.3, g=1.05)
        np.testing.assert_array_equal(pde_rhs(st, DMSO), np.zeros(19))

    def test_dry_interior_finite(self):
        p = np.ones(21)
        p[0] = p[-1] = 1.3679
        st = State1D(0.0, p, np.ones(21))
        rhs = pde_rhs(st, DMSO)
        assert np.all(np.isfinite(rhs))
        assert rhs[0] > 0.0 and rhs[-1] > 0.0   # fluid enters at the walls

    def test_local_bump_diffuses(self):
        p = np.full(21, 1.2)
        p[10] = 1.25
        st = State1D(0.0, p, np.ones(21))
        rhs = pde_rhs(st, DMSO)
        assert rhs[9] < 0.0             # interior index 9 is node 10
        assert rhs[8] > 0.0 and rhs[10] > 0.0

    def test_second_order_consistency(self):
        # nested grids against the finest one: errors should shrink ~4x
        def operator(n):
            z = np.linspace(-1.0, 1.0, n)
            st = State1D(0.0, 1.5 + 0.1 * np.cos(np.pi * z / 2.0), np.ones(n))
            return pde_rhs(st, DMSO)

        finest = 1281
        ref = operator(finest)
        errors = []
        for n in (41, 81, 161):
            stride = (finest - 1) // (n - 1)
            on_shared = ref[np.arange(1, n - 1) * stride - 1]
            errors.append(np.max(np.abs(operator(n) - on_shared)))
        assert errors[0] / errors[1] == pytest.approx(4.0, abs=0.8)
        assert errors[1] / errors[2] == pytest.approx(4.0, abs=0.8)

    def test_matches_velocity_form(self):
        # dp/dt = -(p_Z/p) v - (p-1) v_Z up to discretization error
        n = 201
        z = np.linspace(-1.0, 1.0, n)
        st = State1D(0.0, 1.3 + 0.05 * np.cos(np.pi * z / 2.0), np.ones(n))
        rhs = pde_rhs(st, DMSO)
        v = fluid_velocity(st, DMSO)
        dz = st.dz
        dv = (v[2:] - v[:-2]) / (2.0 * dz)
        dp = (st.p[2:] - st.p[:-2]) / (2.0 * dz)
        pc = st.p[1:-1]
        alt = -(dp / pc * v[1:-1] + (pc - 1.0) * dv)
        assert np.max(np.abs(rhs - alt)) <= 1e-2 * np.max(np.abs(rhs))

    def test_mirror_symmetry_exact(self):
        rng = np.random.default_rng(21)
        half = 1.2 + 0.2 * rng.random(11)
        p = np.concatenate([half, half[-2::-1]])
        gh = 1.0 + 0.1 * rng.random(11)
        g = np.concatenate([gh, gh[-2::-1]])
        st = State1D(0.0, p, g)
        rhs = pde_rhs(st, DMSO)
        np.testing.assert_array_equal(rhs, rhs[::-1])


class TestFluidVelocity:
    def test_uniform_state_no_flow(self):
        st = State1D.uniform(11, p=1.4)
        np.testing.assert_array_equal(fluid_velocity(st, DMSO), np.zeros(11))

    def test_inflow_during_swelling(self):
        z = np.linspace(-1.0, 1.0, 41)
        p = 1.1 + 0.2 * z * z   # swollen near the walls, drier at the center
        st = State1D(0.0, p, np.ones(41))
        v = fluid_velocity(st, DMSO)
        assert v[0] > 0.0 and v[-1] < 0.0

    def test_antisymmetric_for_symmetric_state(self):
        # mirror one half explicitly so the input is bitwise symmetric
        half = 1.2 + 0.1 * np.cos(np.pi * np.linspace(-1.0, 0.0, 16))
        p = np.concatenate([half, half[-2::-1]])
        st = State1D(0.0, p, np.ones(31))
        v = fluid_velocity(st, DMSO)
        np.testing.assert_array_equal(v, -v[::-1])


class TestBoundaryRoot:
    def test_residual_small_at_root(self):
        for g_b, f_star in [(1.0, 0.0), (1.1, 0.0), (1.0, 1.0), (1.2, 0.5)]:
            p_b = solve_boundary_p(g_b, f_star, DMSO)
            assert abs(boundary_residual(p_b, g_b, f_star, DMSO)) <= 1e-10

    def test_frozen_free_swell_root(self):
        p_b = solve_boundary_p(1.0, 0.0, DMSO)
        assert p_b == pytest.approx(P_BOUNDARY_FREE_G1, abs=1e-12)

    def test_compression_reduces_boundary_stretch(self):
        p_free = solve_boundary_p(1.0, 0.0, DMSO)
        p_load = solve_boundary_p(1.0, 1.0, DMSO)
        p_pull = solve_boundary_p(1.0, -0.5, DMSO)
        assert p_load < p_free < p_pull

    def test_no_root_without_elastic_resistance(self):
        # zero moduli and chi < 1/2: the traction residual never crosses zero
        nd = NondimParams(beta1=1.3, beta2=0.018, chi=0.425,
                          mu_p_star=0.0, mu_G_star=0.0, gamma_star=20.0)
        with pytest.raises(BoundaryRootError):
            solve_boundary_p(1.0, 0.0, nd)


class TestMassAccounting:
    def test_uniform_values(self):
        st = State1D.uniform(21, p=2.3)
        assert mass_ratio(st, DMSO) == pytest.approx(2.0, rel=1e-12)
        dry = State1D.uniform(21, p=1.0)
        assert mass_ratio(dry, DMSO) == pytest.approx(1.0, rel=1e-12)

    def test_monotone_in_stretch(self):
        lo = State1D.uniform(21, p=1.2)
        hi = State1D.uniform(21, p=1.3)
        assert mass_ratio(hi, DMSO) > mass_ratio(lo, DMSO)

    def test_normalized_mass(self):
        np.testing.assert_allclose(normalized_mass([1.0, 1.5, 3.0]),
                                   [0.0, 0.25, 1.0])
        with pytest.raises(DomainError):
            normalized_mass([1.0, 1.0, 1.0])
        with pytest.raises(DomainError):
            normalized_mass([1.0])
