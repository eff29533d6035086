"""Dimensionless numbers and Nusselt correlations.

Thin façade over the scalar kernels. The compiled Cython kernels are used
when the extension built; otherwise the pure-Python twin is selected. Set
PCMTES_PURE_PYTHON=1 to force the fallback (the benchmark and the backend
cross-check tests import both modules explicitly).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

if os.environ.get("PCMTES_PURE_PYTHON") == "1":
    from . import _kernels_py as _backend
    KERNEL_BACKEND = "python"
else:
    try:
        from . import _kernels as _backend  # type: ignore[no-redef]
        KERNEL_BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _backend  # type: ignore[no-redef]
        KERNEL_BACKEND = "python"

RA_MCADAMS_MIN = _backend.RA_MCADAMS_MIN
RA_MCADAMS_MAX = _backend.RA_MCADAMS_MAX

grashof = _backend.grashof
prandtl = _backend.prandtl
nusselt_sphere_churchill = _backend.nusselt_sphere_churchill
nusselt_vertical_pipe_mcadams = _backend.nusselt_vertical_pipe_mcadams
friction_factor = _backend.friction_factor
graetz = _backend.graetz
nusselt_internal = _backend.nusselt_internal
klimenko_nusselt = _backend.klimenko_nusselt


def klimenko_phi(zeta_ref: float, geom, chi: float, chi_in: float,
                 chi_out: float, rho_l: float, rho_v: float) -> float:
    """Flow-pattern discriminant of the two-phase boiling correlation, in the
    mass-flux-cancelled form (no dependence on the transferred heat)."""
    return _backend.klimenko_phi(zeta_ref, geom.length, geom.r_inner,
                                 chi, chi_in, chi_out, rho_l, rho_v)


@dataclass(frozen=True)
class RefrigerantFlow:
    """Bundle-level flow state entering the two-phase convection correlation."""

    mdot_total: float     # kg/s across the whole bundle
    q_two_phase: float    # W transferred in the two-phase zones of the bundle
    zeta_ref: float       # two-phase fraction of the pipe length, in (0, 1]


def _klimenko_alpha_raw(mdot_total, q_two_phase, zeta, geom, ref, props_liquid,
                        kappa_wall, g, chi_mean, chi_in, chi_out):
    """Two-phase internal heat transfer coefficient (scalar core).

    Combines the boiling estimate on the bubbly/annular branch selected by
    phi with the zero-quality liquid coefficient through a cubic mean.
    """
    r = geom.r_inner
    n = geom.count
    area_int = 2.0 * 3.141592653589793 * r * geom.length * zeta * n
    q_flux = q_two_phase / area_int

    char_len = (ref.sigma / (g * (ref.rho_sat_liquid - ref.rho_sat_vapour))) ** 0.5
    rho_ratio_vl = ref.rho_sat_vapour / ref.rho_sat_liquid
    q_reduced = q_flux * char_len / (
        ref.h_lat * rho_ratio_vl * (props_liquid.kappa / props_liquid.cp)
    )
    p_reduced = ref.pressure * char_len / ref.sigma
    pr_liq = _backend.prandtl(props_liquid.cp, props_liquid.mu, props_liquid.kappa)
    re_mod = (
        mdot_total * char_len / (props_liquid.mu * 3.141592653589793 * r * r * n)
        * (1.0 + chi_mean * (ref.rho_sat_liquid / ref.rho_sat_vapour - 1.0))
    )
    phi = _backend.klimenko_phi(zeta, geom.length, r, chi_mean, chi_in, chi_out,
                                ref.rho_sat_liquid, ref.rho_sat_vapour)
    nu_boil = _backend.klimenko_nusselt(phi, q_reduced, p_reduced, pr_liq, re_mod,
                                        rho_ratio_vl, kappa_wall / props_liquid.kappa)
    alpha_boil = props_liquid.kappa * nu_boil / char_len

    re_liq = 2.0 * mdot_total * (1.0 - chi_mean) / (
        props_liquid.mu * 3.141592653589793 * r * n
    )
    gz_liq = _backend.graetz(r, geom.length * zeta, pr_liq, re_liq)
    nu_liq = _backend.nusselt_internal(re_liq, pr_liq, gz_liq)
    alpha_liq = props_liquid.kappa * nu_liq / (2.0 * r)

    return (alpha_boil ** 3 + alpha_liq ** 3) ** (1.0 / 3.0)


def klimenko_two_phase_alpha(flow: RefrigerantFlow, geom, ref, props_liquid,
                             kappa_wall: float, g: float) -> float:
    """Internal convective coefficient of the evaporating refrigerant.

    flow.mdot_total and flow.q_two_phase are totals for the whole bundle; the
    vapour qualities come from the refrigerant design point (chi_out = 1,
    chi_in recovered from the design mean quality).
    """
    if flow.mdot_total <= 0.0:
        raise ValueError("klimenko_two_phase_alpha: mdot_total must be positive")
    if not (0.0 < flow.zeta_ref <= 1.0):
        raise ValueError("klimenko_two_phase_alpha: zeta_ref must lie in (0, 1]")
    chi_out = 1.0
    chi_in = 2.0 * ref.chi_mean - chi_out
    return _klimenko_alpha_raw(flow.mdot_total, flow.q_two_phase, flow.zeta_ref,
                               geom, ref, props_liquid, kappa_wall, g,
                               ref.chi_mean, chi_in, chi_out)
