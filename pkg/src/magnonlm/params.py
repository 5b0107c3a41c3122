"""Physical parameters of the light-magnon-microwave system and derived rates.

All quantities are SI. Frequencies are angular (rad/s) unless a name says
otherwise. The defaults reproduce the YIG-sphere baseline used throughout
the package: a 125 um sphere at B0 = 100 mT, a 15 mW pump at 1550 nm and
optical Q = 5e7, 1 MHz magnon and microwave linewidths, g_mb/2pi = 6.8 MHz
and T = 10 mK.
"""

from dataclasses import dataclass, field, fields
import math

import numpy as np
from scipy import constants as _sc

from .errors import ParameterError

TWO_PI = 2.0 * math.pi

__all__ = [
    "PhysicalConstants",
    "MaterialParams",
    "PhysicalParams",
    "DerivedParams",
    "coupling_g_ma",
    "intracavity_photons",
    "thermal_occupation",
    "derive",
    "G_BASE",
    "FIELD_KEYS",
    "MATERIAL_KEYS",
]

#: Reference electromagnonic coupling, 2pi x 3.4 MHz.
G_BASE = TWO_PI * 3.4e6


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = _sc.c
    hbar: float = _sc.hbar
    k_B: float = _sc.k
    gamma_gyro: float = TWO_PI * 28e9

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (np.isfinite(value) and value > 0):
                raise ParameterError(f"constant {f.name} must be positive, got {value!r}")


@dataclass(frozen=True)
class MaterialParams:
    """Magneto-optical properties of the sphere.

    ``verdet`` is in rad/m (3.77 rad/cm for YIG is 377 rad/m).
    """

    verdet: float = 377.0
    n_r: float = 2.19
    n_spin: float = 2.1e28
    radius: float = 125e-6

    def __post_init__(self):
        if not self.verdet > 0:
            raise ParameterError(f"verdet must be > 0, got {self.verdet!r}")
        if not self.n_r >= 1:
            raise ParameterError(f"n_r must be >= 1, got {self.n_r!r}")
        if not self.n_spin > 0:
            raise ParameterError(f"n_spin must be > 0, got {self.n_spin!r}")
        if not self.radius > 0:
            raise ParameterError(f"radius must be > 0, got {self.radius!r}")


_NONNEGATIVE = ("B0", "pump_power", "Q_optical", "omega_b", "kappa_m", "kappa_b", "temperature", "g_mb")
_SIGNED = ("delta_m", "delta_a", "delta_b")


@dataclass(frozen=True)
class PhysicalParams:
    material: MaterialParams = field(default_factory=MaterialParams)
    B0: float = 0.1
    pump_power: float = 15e-3
    pump_wavelength: float = 1550e-9
    Q_optical: float = 5e7
    omega_b: float = TWO_PI * 9e9
    kappa_m: float = TWO_PI * 1e6
    kappa_b: float = TWO_PI * 1e6
    temperature: float = 10e-3
    delta_m: float = 0.0
    delta_a: float = 0.0
    delta_b: float = 0.0
    g_mb: float = TWO_PI * 6.8e6

    def __post_init__(self):
        for name in _NONNEGATIVE:
            value = getattr(self, name)
            if not (np.isfinite(value) and value >= 0):
                raise ParameterError(f"{name} must be finite and >= 0, got {value!r}")
        for name in _SIGNED:
            if not np.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if not (np.isfinite(self.pump_wavelength) and self.pump_wavelength > 0):
            raise ParameterError(f"pump_wavelength must be > 0, got {self.pump_wavelength!r}")

    @classmethod
    def scalar_fields(cls):
        """Names of the float-valued fields (everything except ``material``)."""
        return tuple(f.name for f in fields(cls) if f.name != "material")


@dataclass(frozen=True)
class DerivedParams:
    omega_m: float
    omega_p: float
    omega_a: float
    kappa_a: float
    V_sp: float
    g_ma: float
    n_pump: float
    G_ma: float
    N_m: float
    N_a: float
    N_b: float


def sphere_volume(radius):
    return 4.0 * math.pi / 3.0 * radius**3


def coupling_g_ma(material, constants=PhysicalConstants()):
    """Bare single-magnon optomagnonic coupling in rad/s.

    ``g_ma = verdet * (c / n_r) * sqrt(2 / (n_spin * V_sp))`` with the sphere
    volume ``V_sp = 4/3 pi r^3``.
    """
    n_total = material.n_spin * sphere_volume(material.radius)
    if n_total <= 0:
        raise ParameterError("n_spin * V_sp must be positive")
    return material.verdet * (constants.c / material.n_r) * math.sqrt(2.0 / n_total)


def intracavity_photons(pump_power, kappa_a1, omega_p, constants=PhysicalConstants()):
    """Mean photon number of the pumped optical mode, ``4 P / (kappa hbar omega)``."""
    if not kappa_a1 > 0:
        raise ParameterError(f"kappa_a1 must be > 0, got {kappa_a1!r}")
    if not omega_p > 0:
        raise ParameterError(f"omega_p must be > 0, got {omega_p!r}")
    return 4.0 * pump_power / (kappa_a1 * constants.hbar * omega_p)


def thermal_occupation(omega, temperature, constants=PhysicalConstants()):
    """Bose-Einstein occupation ``1 / (exp(hbar omega / k_B T) - 1)``.

    Returns exactly 0 at T = 0. Written as ``exp(-x) / (1 - exp(-x))`` so
    optical frequencies at cryogenic temperatures underflow cleanly to 0
    instead of overflowing.
    """
    if not omega > 0:
        raise ParameterError(f"omega must be > 0, got {omega!r}")
    if temperature < 0:
        raise ParameterError(f"temperature must be >= 0, got {temperature!r}")
    if temperature == 0:
        return 0.0
    x = constants.hbar * omega / (constants.k_B * temperature)
    return math.exp(-x) / -math.expm1(-x)


def derive(params, constants=PhysicalConstants()):
    """Compute every rate and occupation the linearized dynamics needs.

    The signal (TM) optical mode shares the pump wavelength, so
    ``omega_a = omega_p`` and both optical modes have ``kappa = omega_p / Q``.
    """
    omega_m = constants.gamma_gyro * params.B0
    omega_p = TWO_PI * constants.c / params.pump_wavelength
    omega_a = omega_p
    if not params.Q_optical > 0:
        raise ParameterError("Q_optical must be > 0 to define the optical linewidth")
    kappa_a = omega_a / params.Q_optical
    g_ma = coupling_g_ma(params.material, constants)
    n_pump = intracavity_photons(params.pump_power, kappa_a, omega_p, constants)
    if not (omega_m > 0 and params.omega_b > 0):
        raise ParameterError("B0 and omega_b must be positive for finite thermal occupations")
    T = params.temperature
    return DerivedParams(
        omega_m=omega_m,
        omega_p=omega_p,
        omega_a=omega_a,
        kappa_a=kappa_a,
        V_sp=sphere_volume(params.material.radius),
        g_ma=g_ma,
        n_pump=n_pump,
        G_ma=g_ma * math.sqrt(n_pump),
        N_m=thermal_occupation(omega_m, T, constants),
        N_a=thermal_occupation(omega_a, T, constants),
        N_b=thermal_occupation(params.omega_b, T, constants),
    )


#: PhysicalParams field -> (flat config / CSV key, SI value per key unit).
#: Frequencies are entered per 2pi in Hz, so their factor is 2pi.
FIELD_KEYS = {
    "B0": ("b0_t", 1.0),
    "pump_power": ("pump_power_w", 1.0),
    "pump_wavelength": ("pump_wavelength_m", 1.0),
    "Q_optical": ("q_optical", 1.0),
    "omega_b": ("omega_b_over_2pi_hz", TWO_PI),
    "kappa_m": ("kappa_m_over_2pi_hz", TWO_PI),
    "kappa_b": ("kappa_b_over_2pi_hz", TWO_PI),
    "temperature": ("temperature_k", 1.0),
    "delta_m": ("delta_m_over_2pi_hz", TWO_PI),
    "delta_a": ("delta_a_over_2pi_hz", TWO_PI),
    "delta_b": ("delta_b_over_2pi_hz", TWO_PI),
    "g_mb": ("g_mb_over_2pi_hz", TWO_PI),
}

MATERIAL_KEYS = {
    "verdet": ("verdet_rad_per_m", 1.0),
    "n_r": ("refractive_index", 1.0),
    "n_spin": ("spin_density_per_m3", 1.0),
    "radius": ("radius_m", 1.0),
}
