"""Material constants, capsule/pipe geometry and fluid property evaluation.

All spec objects are frozen dataclasses validated on construction, so they can
be shared read-only across concurrent simulation runs. Fluid properties use a
configurable piecewise-linear-in-temperature model between the endpoints of
each published operating range; no external property database is needed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

from .correlations import _backend as _k


class ConfigurationError(ValueError):
    """Invalid parameter set or unknown fluid/config key."""


@dataclass(frozen=True)
class FluidProps:
    """Evaluated properties of a fluid at one (T, P) point. SI units."""

    rho: float            # kg/m^3
    cp: float             # J/(kg K)
    kappa: float          # W/(m K)
    mu: float             # kg/(m s)
    beta: Optional[float] = None   # 1/K, only needed for buoyancy
    sigma: Optional[float] = None  # N/m, only needed for boiling

    def __post_init__(self):
        for name in ("rho", "cp", "kappa", "mu"):
            if getattr(self, name) <= 0.0:
                raise ConfigurationError(f"FluidProps.{name} must be positive")
        for name in ("beta", "sigma"):
            value = getattr(self, name)
            if value is not None and value <= 0.0:
                raise ConfigurationError(f"FluidProps.{name} must be positive when set")


@dataclass(frozen=True)
class PcmSpec:
    """Thermodynamic constants of the encapsulated phase change material."""

    cp_liquid: float      # J/(kg K)
    cp_solid: float       # J/(kg K)
    h_lat: float          # J/kg, width of the latent zone
    t_lat: float          # degC, phase change temperature
    kappa_liquid: float   # W/(m K)
    kappa_solid: float    # W/(m K)
    kappa_eff_multiplier: float  # melt-convection enhancement, in [1, 3]
    rho_liquid: float     # kg/m^3
    rho_solid: float      # kg/m^3
    h_lat_minus_ref: float = 0.0  # J/kg, reference level of the latent zone floor

    def __post_init__(self):
        if not (self.rho_solid > self.rho_liquid > 0.0):
            raise ConfigurationError("PcmSpec requires rho_solid > rho_liquid > 0")
        if self.h_lat <= 0.0 or self.cp_liquid <= 0.0 or self.cp_solid <= 0.0:
            raise ConfigurationError("PcmSpec requires positive h_lat and heat capacities")
        if self.kappa_liquid <= 0.0 or self.kappa_solid <= 0.0:
            raise ConfigurationError("PcmSpec requires positive conductivities")
        if not (1.0 <= self.kappa_eff_multiplier <= 3.0):
            raise ConfigurationError("PcmSpec.kappa_eff_multiplier must lie in [1, 3]")

    @property
    def h_lat_minus(self) -> float:
        return self.h_lat_minus_ref

    @property
    def h_lat_plus(self) -> float:
        return self.h_lat_minus_ref + self.h_lat

    @property
    def kappa_eff_liquid(self) -> float:
        """Effective liquid conductivity including melt natural convection."""
        return self.kappa_eff_multiplier * self.kappa_liquid


@dataclass(frozen=True)
class CapsuleGeometry:
    """Spherical PCM capsule: sealed polymer shell, shrinking content."""

    r_max: float          # m, content radius fully melted
    r_min: float          # m, content radius fully frozen
    e_wall: float         # m, polymer coating thickness
    kappa_wall: float     # W/(m K)
    n_capsules: int

    def __post_init__(self):
        if not (0.0 < self.r_min < self.r_max):
            raise ConfigurationError("CapsuleGeometry requires 0 < r_min < r_max")
        if self.e_wall <= 0.0 or self.kappa_wall <= 0.0:
            raise ConfigurationError("CapsuleGeometry requires positive wall thickness and conductivity")
        if self.n_capsules < 1:
            raise ConfigurationError("CapsuleGeometry requires at least one capsule")

    @property
    def r_shell_outer(self) -> float:
        """Fixed outer radius of the polymer coating."""
        return self.r_max + self.e_wall


def check_capsule_mass_consistency(pcm: PcmSpec, geom: CapsuleGeometry,
                                   tol: float = 1.0e-3) -> None:
    """Verify r_min = r_max (rho_liquid/rho_solid)^(1/3) within tol.

    Mass conservation of the sealed capsule ties the two radii to the phase
    densities; a mismatch means the parameter set is inconsistent.
    """
    expected = geom.r_max * (pcm.rho_liquid / pcm.rho_solid) ** (1.0 / 3.0)
    if abs(geom.r_min - expected) > tol * expected:
        raise ConfigurationError(
            f"capsule r_min {geom.r_min:.5g} inconsistent with mass conservation "
            f"(expected {expected:.5g} from the density ratio)"
        )


@dataclass(frozen=True)
class PipeSpec:
    """One bundle of identical straight pipes immersed in the tank."""

    r_inner: float        # m
    e_wall: float         # m
    length: float         # m, per pipe
    count: int
    kappa_wall: float     # W/(m K)

    def __post_init__(self):
        if min(self.r_inner, self.e_wall, self.length, self.kappa_wall) <= 0.0:
            raise ConfigurationError("PipeSpec requires positive dimensions and conductivity")
        if self.count < 1:
            raise ConfigurationError("PipeSpec requires at least one pipe")

    @property
    def r_outer(self) -> float:
        return self.r_inner + self.e_wall


@dataclass(frozen=True)
class RefrigerantSpec:
    """Saturation-state constants of the refrigerant at the tank pressure."""

    h_lat: float            # J/kg, enthalpy of vaporization
    rho_sat_liquid: float   # kg/m^3
    rho_sat_vapour: float   # kg/m^3
    sigma: float            # N/m
    h_sat_liquid: float     # J/kg
    chi_mean: float         # design mean vapour quality of the two-phase zone
    pressure: float         # Pa
    t_sat: float            # degC

    def __post_init__(self):
        if not (0.0 <= self.chi_mean <= 1.0):
            raise ConfigurationError("RefrigerantSpec.chi_mean must lie in [0, 1]")
        if not (self.rho_sat_liquid > self.rho_sat_vapour > 0.0):
            raise ConfigurationError("RefrigerantSpec requires rho_sat_liquid > rho_sat_vapour > 0")
        if self.h_lat <= 0.0 or self.sigma <= 0.0 or self.pressure <= 0.0:
            raise ConfigurationError("RefrigerantSpec requires positive h_lat, sigma and pressure")

    @property
    def h_sat_vapour(self) -> float:
        return self.h_sat_liquid + self.h_lat

    def quality(self, h: float) -> float:
        """Vapour quality of the two-phase mixture at enthalpy h."""
        return (h - self.h_sat_liquid) / self.h_lat


@dataclass(frozen=True)
class TankSpec:
    """Tank-level constants: intermediate fluid charge and environment."""

    m_int: float          # kg of intermediate fluid
    p_int: float          # Pa, tank pressure (atmospheric, closed)
    g: float              # m/s^2
    t_env: float          # degC (unused while the tank is modelled adiabatic)

    def __post_init__(self):
        if self.m_int <= 0.0:
            raise ConfigurationError("TankSpec.m_int must be positive")


# --- PCM enthalpy-indexed state functions -----------------------------------

def pcm_temperature_of_enthalpy(h: float, spec: PcmSpec) -> float:
    """Temperature of PCM at specific enthalpy h (degC). Total, continuous,
    monotone non-decreasing."""
    return _k.pcm_temperature(h, spec.h_lat_minus, spec.h_lat_plus, spec.t_lat,
                              spec.cp_solid, spec.cp_liquid)


def pcm_density_of_enthalpy(h: float, spec: PcmSpec) -> float:
    """Density of PCM at enthalpy h: charge-fraction blend across the latent
    zone, clamped to the phase values outside."""
    return _k.pcm_blend(h, spec.h_lat_minus, spec.h_lat_plus,
                        spec.rho_solid, spec.rho_liquid)


def pcm_conductivity_of_enthalpy(h: float, spec: PcmSpec) -> float:
    """Thermal conductivity of PCM at enthalpy h. The liquid endpoint uses the
    effective conductivity (melt convection enhancement)."""
    return _k.pcm_blend(h, spec.h_lat_minus, spec.h_lat_plus,
                        spec.kappa_solid, spec.kappa_eff_liquid)


def layer_charge_ratio(h: float, spec: PcmSpec) -> float:
    """Charge ratio of a PCM parcel at enthalpy h; 0 at the melted edge of the
    latent zone, 1 at the frozen edge, unclamped outside."""
    return _k.layer_charge_fraction(h, spec.h_lat_minus, spec.h_lat_plus)


# --- fluid property model ----------------------------------------------------

INTERMEDIATE = "intermediate"
SECONDARY = "secondary"
REFRIGERANT_VAPOUR = "refrigerant_vapour"
REFRIGERANT_SAT_LIQUID = "refrigerant_sat_liquid"

FLUID_IDS = (INTERMEDIATE, SECONDARY, REFRIGERANT_VAPOUR, REFRIGERANT_SAT_LIQUID)

_EXTRAPOLATION_MSG = "film temperature outside the property validity window; value clamped"


@dataclass(frozen=True)
class FluidModel:
    """Linear-in-T property curves for one fluid over a validity window.

    Each curve is (value at t_window[0], value at t_window[1]); evaluation
    clamps outside the window (with a RuntimeWarning) rather than failing,
    since transient film temperatures can briefly leave the nominal span.
    """

    name: str
    t_window: tuple[float, float]
    rho: tuple[float, float]
    cp: tuple[float, float]
    kappa: tuple[float, float]
    mu: tuple[float, float]
    beta: Optional[tuple[float, float]] = None
    sigma: Optional[float] = None

    def __post_init__(self):
        if self.t_window[1] <= self.t_window[0]:
            raise ConfigurationError(f"{self.name}: property window must be increasing")
        for prop in ("rho", "cp", "kappa", "mu"):
            lo, hi = getattr(self, prop)
            if min(lo, hi) <= 0.0:
                raise ConfigurationError(f"{self.name}.{prop} endpoints must be positive")

    def evaluate(self, t_film: float) -> FluidProps:
        t0, t1 = self.t_window
        if t_film < t0 or t_film > t1:
            warnings.warn(_EXTRAPOLATION_MSG, RuntimeWarning, stacklevel=3)
        return FluidProps(
            rho=_k.lerp_clamped(t_film, t0, t1, *self.rho),
            cp=_k.lerp_clamped(t_film, t0, t1, *self.cp),
            kappa=_k.lerp_clamped(t_film, t0, t1, *self.kappa),
            mu=_k.lerp_clamped(t_film, t0, t1, *self.mu),
            beta=None if self.beta is None
            else _k.lerp_clamped(t_film, t0, t1, *self.beta),
            sigma=self.sigma,
        )


@dataclass(frozen=True)
class FluidLibrary:
    """The four process fluids of the storage tank."""

    intermediate: FluidModel
    secondary: FluidModel
    refrigerant_vapour: FluidModel
    refrigerant_sat_liquid: FluidModel

    def model(self, fluid: str) -> FluidModel:
        try:
            return getattr(self, fluid)
        except AttributeError:
            raise ConfigurationError(
                f"unknown fluid id {fluid!r}; expected one of {FLUID_IDS}"
            ) from None


def fluid_properties(library: FluidLibrary, fluid: str, t_film: float,
                     pressure: Optional[float] = None) -> FluidProps:
    """Evaluate one fluid's properties at a film temperature.

    The pressure argument is accepted for interface completeness; the curves
    are already parameterised at each fluid's fixed operating pressure.
    """
    del pressure
    return library.model(fluid).evaluate(t_film)


@dataclass(frozen=True)
class ParameterSet:
    """Everything immutable a simulation needs: materials, geometry, fluids."""

    pcm: PcmSpec
    capsule: CapsuleGeometry
    ref_pipe: PipeSpec
    sec_pipe: PipeSpec
    refrigerant: RefrigerantSpec
    tank: TankSpec
    fluids: FluidLibrary
    front_collapse_radius: float = 1.0e-6  # m, fronts freeze below this

    def __post_init__(self):
        check_capsule_mass_consistency(self.pcm, self.capsule)
