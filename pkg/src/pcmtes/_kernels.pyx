# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled twin of pcmtes._kernels_py. Same signatures, same semantics,
same operation order; keep in lockstep with the pure-Python module."""

import warnings

from libc.math cimport exp, log, tanh, pow, fabs

RA_MCADAMS_MIN = 1.0e4
RA_MCADAMS_MAX = 1.0e13
RA_MCADAMS_SPLIT = 1.0e9

PARALLEL_FLOW = 0
COUNTER_FLOW = 1
INFINITE_RESERVOIR = 2

_MCADAMS_LOW_MSG = "Rayleigh number below McAdams validity range; clamped to 1e4"
_MCADAMS_HIGH_MSG = "Rayleigh number above McAdams validity range; clamped to 1e13"


cpdef double grashof(double beta, double dt_abs, double length, double rho,
                     double mu, double g) except? -1.0:
    """Grashof number g*beta*|dT|*L^3 / (mu/rho)^2 for buoyant convection."""
    cdef double nu
    if mu <= 0.0 or rho <= 0.0:
        raise ValueError("grashof: mu and rho must be positive")
    if dt_abs < 0.0 or length < 0.0 or beta < 0.0 or g < 0.0:
        raise ValueError("grashof: beta, dt_abs, length and g must be non-negative")
    nu = mu / rho
    return g * beta * dt_abs * length * length * length / (nu * nu)


cpdef double prandtl(double cp, double mu, double kappa) except? -1.0:
    """Prandtl number cp*mu/kappa."""
    if kappa <= 0.0:
        raise ValueError("prandtl: kappa must be positive")
    return cp * mu / kappa


cpdef double nusselt_sphere_churchill(double ra, double pr) except? -1.0:
    """Churchill correlation for natural convection around a sphere (Nu >= 2)."""
    if ra < 0.0:
        raise ValueError("nusselt_sphere_churchill: Ra must be non-negative")
    if pr <= 0.0:
        raise ValueError("nusselt_sphere_churchill: Pr must be positive")
    return 2.0 + 0.589 * pow(ra, 0.25) / pow(1.0 + pow(0.469 / pr, 9.0 / 16.0), 4.0 / 9.0)


cpdef double nusselt_vertical_pipe_mcadams(double ra) except? -1.0:
    """McAdams vertical-pipe natural convection; clamps Ra to [1e4, 1e13]."""
    if ra < RA_MCADAMS_MIN:
        warnings.warn(_MCADAMS_LOW_MSG, RuntimeWarning, stacklevel=2)
        ra = RA_MCADAMS_MIN
    elif ra > RA_MCADAMS_MAX:
        warnings.warn(_MCADAMS_HIGH_MSG, RuntimeWarning, stacklevel=2)
        ra = RA_MCADAMS_MAX
    if ra <= RA_MCADAMS_SPLIT:
        return 0.59 * pow(ra, 0.25)
    return 0.10 * pow(ra, 1.0 / 3.0)


cpdef double friction_factor(double re) except? -1.0:
    """Smooth-pipe turbulent friction factor (0.790 ln Re - 1.64)^-2."""
    cdef double bracket
    if re <= 1.0:
        raise ValueError("friction_factor: Re must exceed 1")
    bracket = 0.790 * log(re) - 1.64
    if bracket <= 0.0:
        raise ValueError("friction_factor: log bracket non-positive (Re too small)")
    return 1.0 / (bracket * bracket)


cpdef double graetz(double r, double l_effective, double pr, double re) except? -1.0:
    """Graetz number (2r/l)*Pr*Re for entry-region laminar flow."""
    if l_effective <= 0.0:
        raise ValueError("graetz: effective length must be positive")
    return (2.0 * r / l_effective) * pr * re


cpdef double nusselt_internal(double re, double pr, double gz) except? -1.0:
    """Internal forced convection: entry-region laminar form for Re <= 3000,
    Gnielinski for Re > 3000."""
    cdef double num, den, psi
    if pr <= 0.0:
        raise ValueError("nusselt_internal: Pr must be positive")
    if re <= 3000.0:
        if gz <= 0.0:
            raise ValueError("nusselt_internal: Gz must be positive")
        num = 3.66 / tanh(2.264 * pow(gz, -1.0 / 3.0) + 1.7 * pow(gz, -2.0 / 3.0)) \
            + 0.0499 * gz * tanh(1.0 / gz)
        den = tanh(2.432 * pow(pr, 1.0 / 6.0) * pow(gz, -1.0 / 6.0))
        return num / den
    psi = friction_factor(re)
    return (psi / 8.0) * (re - 1000.0) * pr / (
        1.0 + 12.7 * pow(psi / 8.0, 0.5) * (pow(pr, 2.0 / 3.0) - 1.0)
    )


cpdef double effectiveness(double ntu, double c_rat, int arrangement) except? -1.0:
    """Effectiveness for parallel (0), counter (1) or infinite-reservoir (2)."""
    cdef double e
    if ntu < 0.0:
        raise ValueError("effectiveness: NTU must be non-negative")
    if c_rat < 0.0 or c_rat > 1.0:
        raise ValueError("effectiveness: c_rat must lie in [0, 1]")
    if arrangement == PARALLEL_FLOW:
        return (1.0 - exp(-ntu * (1.0 + c_rat))) / (1.0 + c_rat)
    if arrangement == COUNTER_FLOW:
        if fabs(1.0 - c_rat) < 1.0e-12:
            return ntu / (1.0 + ntu)
        e = exp(-ntu * (1.0 - c_rat))
        return (1.0 - e) / (1.0 - c_rat * e)
    if arrangement == INFINITE_RESERVOIR:
        return 1.0 - exp(-ntu)
    raise ValueError("effectiveness: unknown arrangement code")


cpdef double klimenko_phi(double zeta, double length, double radius,
                          double chi_mean, double chi_in, double chi_out,
                          double rho_liq, double rho_vap) except? -1.0:
    """Klimenko flow-pattern discriminant (mass-flux-cancelled form)."""
    if zeta <= 0.0:
        raise ValueError("klimenko_phi: zeta must be positive")
    if chi_out <= chi_in:
        raise ValueError("klimenko_phi: chi_out must exceed chi_in")
    if rho_liq <= 0.0 or rho_vap <= 0.0:
        raise ValueError("klimenko_phi: densities must be positive")
    return (
        (2.0 * length * zeta / (radius * (chi_out - chi_in)))
        * (1.0 + chi_mean * (rho_liq / rho_vap - 1.0))
        * pow(rho_vap / rho_liq, 1.0 / 3.0)
    )


cdef inline double _klimenko_bubbly(double q_reduced, double p_reduced,
                                    double pr_liq, double kappa_wall_ratio):
    return (
        0.0076
        * pow(q_reduced, 0.6)
        * pow(p_reduced, 0.5)
        * pow(pr_liq, -1.0 / 3.0)
        * pow(kappa_wall_ratio, 0.15)
    )


cdef inline double _klimenko_annular(double re_mod, double pr_liq,
                                     double rho_ratio_vl, double kappa_wall_ratio):
    return (
        0.087
        * pow(re_mod, 0.6)
        * pow(pr_liq, 1.0 / 6.0)
        * pow(rho_ratio_vl, 0.2)
        * pow(kappa_wall_ratio, 0.09)
    )


cpdef double klimenko_nusselt(double phi, double q_reduced, double p_reduced,
                              double pr_liq, double re_mod, double rho_ratio_vl,
                              double kappa_wall_ratio) except? -1.0:
    """Klimenko two-phase Nusselt number with regime selection by phi."""
    cdef double a, b
    if q_reduced <= 0.0 or p_reduced <= 0.0:
        raise ValueError("klimenko_nusselt: reduced flux and pressure must be positive")
    if pr_liq <= 0.0 or re_mod <= 0.0:
        raise ValueError("klimenko_nusselt: Pr and Re' must be positive")
    if phi <= 12000.0:
        return _klimenko_bubbly(q_reduced, p_reduced, pr_liq, kappa_wall_ratio)
    if phi > 20000.0:
        return _klimenko_annular(re_mod, pr_liq, rho_ratio_vl, kappa_wall_ratio)
    a = _klimenko_bubbly(q_reduced, p_reduced, pr_liq, kappa_wall_ratio)
    b = _klimenko_annular(re_mod, pr_liq, rho_ratio_vl, kappa_wall_ratio)
    return a if a > b else b


cpdef double pcm_temperature(double h, double h_lo, double h_hi, double t_lat,
                             double cp_solid, double cp_liquid):
    """Piecewise continuous enthalpy -> temperature map for the PCM."""
    if h < h_lo:
        return t_lat - (h_lo - h) / cp_solid
    if h > h_hi:
        return t_lat + (h - h_hi) / cp_liquid
    return t_lat


cpdef double pcm_blend(double h, double h_lo, double h_hi, double v_solid,
                       double v_liquid):
    """Latent-zone property blend weighted by layer charge fraction."""
    cdef double frac
    if h <= h_lo:
        return v_solid
    if h >= h_hi:
        return v_liquid
    frac = (h_hi - h) / (h_hi - h_lo)
    return v_liquid + frac * (v_solid - v_liquid)


cpdef double layer_charge_fraction(double h, double h_lo, double h_hi):
    """(h_hi - h)/(h_hi - h_lo); exceeds [0, 1] outside the latent zone."""
    return (h_hi - h) / (h_hi - h_lo)


cpdef double lerp_clamped(double x, double x0, double x1, double v0, double v1):
    """Linear interpolation of v over [x0, x1], held constant outside."""
    if x <= x0:
        return v0
    if x >= x1:
        return v1
    return v0 + (v1 - v0) * (x - x0) / (x1 - x0)
