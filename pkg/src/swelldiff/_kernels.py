"""Compiled inner loop for the explicit sub-stepped diffusion advance.

The solver takes thousands of stability-limited sub-steps per macro time
step, far too many for vectorized numpy to keep up with, so the sub-step
loop lives here as a single numba kernel.  The formulas must stay in lock
step with :func:`swelldiff.onedim.tzz_sf` / ``psi_tilde`` / ``pde_rhs``;
the test suite pins the two code paths against each other.

No fastmath, no parallelism: results must be bit-for-bit reproducible.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def advance_axial_stretch(p, g, dt_total, n_sub, dz, beta1, beta2, chi,
                          mu_p, mu_g, eps):
    """Advance the interior of ``p`` by ``dt_total`` in ``n_sub`` Euler sub-steps.

    ``p`` is modified in place; entries 0 and n-1 are Dirichlet boundary
    values and are left untouched.  ``g`` is frozen for the whole advance.
    Any interior update that would drop below the 1 + eps floor is clipped;
    the number of clips is returned.
    """
    n = p.size
    dt = dt_total / n_sub
    w = np.empty(n)
    a = np.empty(n)
    p_next = np.empty(n)
    mug_g2m1 = np.empty(n)      # mu_G* (g^2 - 1), fixed per node
    inv_g2 = np.empty(n)        # 1 / g^2, fixed per node
    inv_b1 = 1.0 / beta1
    inv_dz = 1.0 / dz
    inv_2dz = 0.5 / dz
    floor = 1.0 + eps
    clipped = 0
    for i in range(n):
        gi = g[i]
        mug_g2m1[i] = mu_g * (gi * gi - 1.0)
        inv_g2[i] = 1.0 / (gi * gi)
        if p[i] < floor:
            p[i] = floor
    for _ in range(n_sub):
        for i in range(n):
            pi = p[i]
            invp = 1.0 / pi
            u = 1.0 - invp
            lg = math.log(u)
            pg2 = pi * pi * inv_g2[i]
            ell = lg + invp + chi * invp * invp
            mech = (1.0 + (pi - 1.0) * inv_b1) \
                * (mu_p * (3.0 * pg2 - 1.0) + mug_g2m1[i]) \
                + (pi + beta1 - 1.0) * ell
            swell = inv_b1 * pi * (mug_g2m1[i] + mu_p * (pg2 - 1.0)) \
                + (pi - 1.0) * lg - chi * invp
            w[i] = mech + swell
            a[i] = u * invp
        for i in range(1, n - 1):
            pi = p[i]
            flux_r = 0.5 * (a[i] + a[i + 1]) * (w[i + 1] - w[i]) * inv_dz
            flux_l = 0.5 * (a[i - 1] + a[i]) * (w[i] - w[i - 1]) * inv_dz
            conservative = (pi - 1.0) * (flux_r - flux_l) * inv_dz
            advective = a[i] / pi * ((p[i + 1] - p[i - 1]) * inv_2dz) \
                * ((w[i + 1] - w[i - 1]) * inv_2dz)
            pn = pi + dt * (advective + conservative) / beta2
            if pn < floor:
                pn = floor
                clipped += 1
            p_next[i] = pn
        for i in range(1, n - 1):
            p[i] = p_next[i]
    return clipped
