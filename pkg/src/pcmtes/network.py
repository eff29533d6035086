"""Thermal resistances for spheres and pipes, and the effectiveness-NTU map.

Stateless pure functions. Infinite resistance (collapsed front, absent zone)
is signalled with math.inf; writers translate it to an empty field so CSV
output stays parseable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .correlations import _backend as _k
from .properties import PipeSpec

INFINITE_RESISTANCE = math.inf

_ARRANGEMENTS = {
    "parallel": _k.PARALLEL_FLOW,
    "counter": _k.COUNTER_FLOW,
    "infinite-reservoir": _k.INFINITE_RESERVOIR,
}


@dataclass(frozen=True)
class ResistanceStack:
    """Series resistances between a stream and the intermediate fluid, K/W."""

    r_conv_int: float
    r_cond_wall: float
    r_conv_ext: float
    r_cond_internal_shell: Optional[float] = None  # spheres only

    @property
    def total(self) -> float:
        extra = self.r_cond_internal_shell or 0.0
        return self.r_conv_int + self.r_cond_wall + self.r_conv_ext + extra


def r_cond_spherical_shell(r_inner: float, r_outer: float, kappa: float) -> float:
    """Conduction resistance of a spherical shell, (1/4 pi kappa)(1/ri - 1/ro).

    A vanishing shell (r_inner == r_outer) has zero resistance; r_inner == 0
    returns the infinite-resistance signal (core unreachable, e.g. a collapsed
    freezing front).
    """
    if kappa <= 0.0:
        raise ValueError("r_cond_spherical_shell: kappa must be positive")
    if r_inner < 0.0 or r_inner > r_outer:
        raise ValueError("r_cond_spherical_shell: need 0 <= r_inner <= r_outer")
    if r_inner == r_outer:
        return 0.0
    if r_inner == 0.0:
        return INFINITE_RESISTANCE
    return (1.0 / (4.0 * math.pi * kappa)) * (1.0 / r_inner - 1.0 / r_outer)


def r_conv_sphere_ext(alpha: float, r_surface: float) -> float:
    """External convection resistance of a sphere, 1/(alpha 4 pi r^2)."""
    if alpha <= 0.0:
        raise ValueError("r_conv_sphere_ext: alpha must be positive")
    return 1.0 / (alpha * 4.0 * math.pi * r_surface * r_surface)


def r_pipe_stack(alpha_int: float, alpha_ext: float, pipe: PipeSpec,
                 zone_fraction: float) -> ResistanceStack:
    """Series stack of one pipe zone: internal film, wall, external film.

    zone_fraction scales the active length; every term is inversely
    proportional to it. zone_fraction == 0 returns the infinite-resistance
    signal for all terms (zone absent).
    """
    if zone_fraction < 0.0 or zone_fraction > 1.0:
        raise ValueError("r_pipe_stack: zone_fraction must lie in [0, 1]")
    if zone_fraction == 0.0:
        return ResistanceStack(INFINITE_RESISTANCE, INFINITE_RESISTANCE,
                               INFINITE_RESISTANCE)
    if alpha_int <= 0.0 or alpha_ext <= 0.0:
        raise ValueError("r_pipe_stack: convective coefficients must be positive")
    length = pipe.length * zone_fraction
    r_wall = math.log(pipe.r_outer / pipe.r_inner) / (
        pipe.kappa_wall * 2.0 * math.pi * length
    )
    r_int = 1.0 / (alpha_int * 2.0 * math.pi * pipe.r_inner * length)
    r_ext = 1.0 / (alpha_ext * 2.0 * math.pi * pipe.r_outer * length)
    return ResistanceStack(r_int, r_wall, r_ext)


def ntu(resistance_total: float, c_min: float) -> float:
    """Number of transfer units, 1/(R C_min)."""
    if resistance_total <= 0.0 or c_min <= 0.0:
        raise ValueError("ntu: resistance and heat capacity rate must be positive")
    return 1.0 / (resistance_total * c_min)


def effectiveness(ntu_value: float, c_rat: float, arrangement: str) -> float:
    """Exchanger effectiveness in [0, 1) for the named flow arrangement.

    'infinite-reservoir' is the c_rat -> 0 collapse (one stream so massive its
    temperature does not change); both finite arrangements reduce to it.
    """
    try:
        code = _ARRANGEMENTS[arrangement]
    except KeyError:
        raise ValueError(
            f"effectiveness: unknown arrangement {arrangement!r}; "
            f"expected one of {sorted(_ARRANGEMENTS)}"
        ) from None
    return _k.effectiveness(ntu_value, c_rat, code)
