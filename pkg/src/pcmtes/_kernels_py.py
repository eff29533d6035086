"""Scalar numerical kernels: dimensionless groups, Nusselt correlations and
enthalpy-indexed material blends.

Pure-Python reference implementation. A compiled twin (``pcmtes._kernels``,
Cython) with identical signatures and semantics is built when a C toolchain
is available; ``pcmtes.correlations`` selects whichever imports. Keep the two
files in lockstep — ``tests/test_kernels_backends.py`` cross-checks them.

All functions are stateless and safe for concurrent use. Temperatures are in
degrees Celsius (only differences enter the formulas), everything else SI.
"""

import warnings
from math import exp, log, tanh

RA_MCADAMS_MIN = 1.0e4
RA_MCADAMS_MAX = 1.0e13
RA_MCADAMS_SPLIT = 1.0e9

PARALLEL_FLOW = 0
COUNTER_FLOW = 1
INFINITE_RESERVOIR = 2

_MCADAMS_LOW_MSG = "Rayleigh number below McAdams validity range; clamped to 1e4"
_MCADAMS_HIGH_MSG = "Rayleigh number above McAdams validity range; clamped to 1e13"


def grashof(beta, dt_abs, length, rho, mu, g):
    """Grashof number g*beta*|dT|*L^3 / (mu/rho)^2 for buoyant convection."""
    if mu <= 0.0 or rho <= 0.0:
        raise ValueError("grashof: mu and rho must be positive")
    if dt_abs < 0.0 or length < 0.0 or beta < 0.0 or g < 0.0:
        raise ValueError("grashof: beta, dt_abs, length and g must be non-negative")
    nu = mu / rho
    return g * beta * dt_abs * length * length * length / (nu * nu)


def prandtl(cp, mu, kappa):
    """Prandtl number cp*mu/kappa."""
    if kappa <= 0.0:
        raise ValueError("prandtl: kappa must be positive")
    return cp * mu / kappa


def nusselt_sphere_churchill(ra, pr):
    """Churchill correlation for natural convection around a sphere.

    Nu = 2 + 0.589 Ra^(1/4) / [1 + (0.469/Pr)^(9/16)]^(4/9); always >= 2
    (conduction limit at Ra = 0).
    """
    if ra < 0.0:
        raise ValueError("nusselt_sphere_churchill: Ra must be non-negative")
    if pr <= 0.0:
        raise ValueError("nusselt_sphere_churchill: Pr must be positive")
    return 2.0 + 0.589 * ra ** 0.25 / (1.0 + (0.469 / pr) ** (9.0 / 16.0)) ** (4.0 / 9.0)


def nusselt_vertical_pipe_mcadams(ra):
    """McAdams correlation for natural convection along a vertical pipe.

    Laminar branch 0.59 Ra^(1/4) on [1e4, 1e9] (closed at 1e9), turbulent
    branch 0.10 Ra^(1/3) on (1e9, 1e13]. Rayleigh numbers outside [1e4, 1e13]
    are clamped to the nearest endpoint with a RuntimeWarning so start-up
    transients with tiny temperature differences do not abort a run.
    """
    if ra < RA_MCADAMS_MIN:
        warnings.warn(_MCADAMS_LOW_MSG, RuntimeWarning, stacklevel=2)
        ra = RA_MCADAMS_MIN
    elif ra > RA_MCADAMS_MAX:
        warnings.warn(_MCADAMS_HIGH_MSG, RuntimeWarning, stacklevel=2)
        ra = RA_MCADAMS_MAX
    if ra <= RA_MCADAMS_SPLIT:
        return 0.59 * ra ** 0.25
    return 0.10 * ra ** (1.0 / 3.0)


def friction_factor(re):
    """Smooth-pipe turbulent friction factor (0.790 ln Re - 1.64)^-2."""
    if re <= 1.0:
        raise ValueError("friction_factor: Re must exceed 1")
    bracket = 0.790 * log(re) - 1.64
    if bracket <= 0.0:
        raise ValueError("friction_factor: log bracket non-positive (Re too small)")
    return bracket ** -2


def graetz(r, l_effective, pr, re):
    """Graetz number (2r/l)*Pr*Re for entry-region laminar flow."""
    if l_effective <= 0.0:
        raise ValueError("graetz: effective length must be positive")
    return (2.0 * r / l_effective) * pr * re


def nusselt_internal(re, pr, gz):
    """Internal forced-convection Nusselt number for a circular pipe.

    Laminar (Re <= 3000): entry-region correlation that tends to 3.66 as
    Gz -> 0. Turbulent (Re > 3000): Gnielinski with the smooth-pipe friction
    factor. The branch switch at Re = 3000 is a documented discontinuity.
    """
    if pr <= 0.0:
        raise ValueError("nusselt_internal: Pr must be positive")
    if re <= 3000.0:
        if gz <= 0.0:
            raise ValueError("nusselt_internal: Gz must be positive")
        num = 3.66 / tanh(2.264 * gz ** (-1.0 / 3.0) + 1.7 * gz ** (-2.0 / 3.0)) \
            + 0.0499 * gz * tanh(1.0 / gz)
        den = tanh(2.432 * pr ** (1.0 / 6.0) * gz ** (-1.0 / 6.0))
        return num / den
    psi = friction_factor(re)
    return (psi / 8.0) * (re - 1000.0) * pr / (
        1.0 + 12.7 * (psi / 8.0) ** 0.5 * (pr ** (2.0 / 3.0) - 1.0)
    )


def effectiveness(ntu, c_rat, arrangement):
    """Heat-exchanger effectiveness for the supported flow arrangements.

    arrangement: 0 parallel, 1 counter-current, 2 infinite reservoir
    (the c_rat -> 0 collapse, 1 - exp(-NTU)). The counter-current c_rat = 1
    singularity uses the analytic limit NTU/(1+NTU).
    """
    if ntu < 0.0:
        raise ValueError("effectiveness: NTU must be non-negative")
    if c_rat < 0.0 or c_rat > 1.0:
        raise ValueError("effectiveness: c_rat must lie in [0, 1]")
    if arrangement == PARALLEL_FLOW:
        return (1.0 - exp(-ntu * (1.0 + c_rat))) / (1.0 + c_rat)
    if arrangement == COUNTER_FLOW:
        if abs(1.0 - c_rat) < 1.0e-12:
            return ntu / (1.0 + ntu)
        e = exp(-ntu * (1.0 - c_rat))
        return (1.0 - e) / (1.0 - c_rat * e)
    if arrangement == INFINITE_RESERVOIR:
        return 1.0 - exp(-ntu)
    raise ValueError("effectiveness: unknown arrangement code")


def klimenko_phi(zeta, length, radius, chi_mean, chi_in, chi_out, rho_liq, rho_vap):
    """Klimenko flow-pattern discriminant (mass-flux-cancelled form).

    phi = [2 l zeta / (r (chi_out - chi_in))] * [1 + chi(rho_l/rho_v - 1)]
          * (rho_v/rho_l)^(1/3)
    """
    if zeta <= 0.0:
        raise ValueError("klimenko_phi: zeta must be positive")
    if chi_out <= chi_in:
        raise ValueError("klimenko_phi: chi_out must exceed chi_in")
    if rho_liq <= 0.0 or rho_vap <= 0.0:
        raise ValueError("klimenko_phi: densities must be positive")
    return (
        (2.0 * length * zeta / (radius * (chi_out - chi_in)))
        * (1.0 + chi_mean * (rho_liq / rho_vap - 1.0))
        * (rho_vap / rho_liq) ** (1.0 / 3.0)
    )


def klimenko_nusselt(phi, q_reduced, p_reduced, pr_liq, re_mod, rho_ratio_vl,
                     kappa_wall_ratio):
    """Klimenko two-phase Nusselt number with regime selection by phi.

    phi <= 12000 selects the bubbly branch, phi > 20000 the annular branch,
    and the band in between takes the maximum of the two.
    """
    if q_reduced <= 0.0 or p_reduced <= 0.0:
        raise ValueError("klimenko_nusselt: reduced flux and pressure must be positive")
    if pr_liq <= 0.0 or re_mod <= 0.0:
        raise ValueError("klimenko_nusselt: Pr and Re' must be positive")
    if phi <= 12000.0:
        return _klimenko_bubbly(q_reduced, p_reduced, pr_liq, kappa_wall_ratio)
    if phi > 20000.0:
        return _klimenko_annular(re_mod, pr_liq, rho_ratio_vl, kappa_wall_ratio)
    return max(
        _klimenko_bubbly(q_reduced, p_reduced, pr_liq, kappa_wall_ratio),
        _klimenko_annular(re_mod, pr_liq, rho_ratio_vl, kappa_wall_ratio),
    )


def _klimenko_bubbly(q_reduced, p_reduced, pr_liq, kappa_wall_ratio):
    return (
        0.0076
        * q_reduced ** 0.6
        * p_reduced ** 0.5
        * pr_liq ** (-1.0 / 3.0)
        * kappa_wall_ratio ** 0.15
    )


def _klimenko_annular(re_mod, pr_liq, rho_ratio_vl, kappa_wall_ratio):
    return (
        0.087
        * re_mod ** 0.6
        * pr_liq ** (1.0 / 6.0)
        * rho_ratio_vl ** 0.2
        * kappa_wall_ratio ** 0.09
    )


def pcm_temperature(h, h_lo, h_hi, t_lat, cp_solid, cp_liquid):
    """Piecewise enthalpy -> temperature map: flat across the latent zone,
    linear with the phase heat capacity outside; continuous everywhere."""
    if h < h_lo:
        return t_lat - (h_lo - h) / cp_solid
    if h > h_hi:
        return t_lat + (h - h_hi) / cp_liquid
    return t_lat


def pcm_blend(h, h_lo, h_hi, v_solid, v_liquid):
    """Latent-zone linear blend of a property between its solid and liquid
    values, weighted by the layer charge fraction; clamped outside."""
    if h <= h_lo:
        return v_solid
    if h >= h_hi:
        return v_liquid
    frac = (h_hi - h) / (h_hi - h_lo)
    return v_liquid + frac * (v_solid - v_liquid)


def layer_charge_fraction(h, h_lo, h_hi):
    """(h_hi - h)/(h_hi - h_lo); exceeds [0, 1] outside the latent zone."""
    return (h_hi - h) / (h_hi - h_lo)


def lerp_clamped(x, x0, x1, v0, v1):
    """Linear interpolation of v over [x0, x1], held constant outside."""
    if x <= x0:
        return v0
    if x >= x1:
        return v1
    return v0 + (v1 - v0) * (x - x0) / (x1 - x0)
