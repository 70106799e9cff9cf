"""Morse oscillator parameters, energy spectrum, and revival-time algebra.

Spectroscopic inputs are wavenumbers (omega/2*pi*c in cm^-1) kept as exact
rationals so that the quantum defect and the integer revival counts come out
of integer arithmetic instead of floating point. Times are picoseconds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

# Speed of light [cm/ps]; converts a wavenumber gap to a beat period via
# T = 1 / (c * delta_nu).
C_CM_PER_PS = 0.0299792458

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class NumericsError(RuntimeError):
    """A numeric guard tripped (overflow, energy drift, resource bound)."""


def as_rational(value: RationalLike, name: str = "value") -> Fraction:
    """Coerce ints, strings like '52/3', or Fractions to an exact Fraction.

    Floats are rejected: their exact binary expansion is almost never the
    rational the caller meant, and the revival integers M and N would come
    out astronomically wrong. Rationalize decimals explicitly first
    (config.rationalize does this for the CLI).
    """
    if isinstance(value, float):
        raise ValueError(
            f"{name}: refusing float {value!r}; pass an exact rational "
            "(int, Fraction, or 'p/q' string) or rationalize it first"
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValueError(f"{name}: not a rational number: {value!r}") from exc


@dataclass(frozen=True)
class MorseParams:
    """Exact-rational Morse inputs.

    omega_e: harmonic frequency as a wavenumber (cm^-1)
    omega_chi: anharmonic frequency as a wavenumber (cm^-1)
    mu: optional reduced mass (amu); only sets the physical length scale,
        never the spectrum or any revival time.
    """

    omega_e: Fraction
    omega_chi: Fraction
    mu: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega_e", as_rational(self.omega_e, "omega_e"))
        object.__setattr__(self, "omega_chi", as_rational(self.omega_chi, "omega_chi"))
        if self.omega_e <= 0:
            raise ValueError(f"omega_e: must be > 0, got {self.omega_e}")
        if self.omega_chi <= 0:
            raise ValueError(f"omega_chi: must be > 0, got {self.omega_chi}")
        if self.omega_e / (2 * self.omega_chi) - Fraction(1, 2) < 0:
            raise ValueError(
                "omega_e/(2*omega_chi) - 1/2 < 0: potential supports no bound state"
            )
        if self.mu is not None and self.mu <= 0:
            raise ValueError(f"mu: must be > 0, got {self.mu}")


@dataclass(frozen=True)
class DerivedParams:
    """Quantities derived exactly from MorseParams.

    d_e: dissociation energy omega_e^2/(4*omega_chi) (cm^-1)
    nu: well-depth parameter omega_e/omega_chi (dimensionless, exact)
    n_real: root of E(n) = D, equal to nu/2 - 1/2 (exact)
    n_max: floor(n_real), the highest bound quantum number
    delta_n: quantum defect, fractional part of n_real, in [0, 1)
    """

    d_e: float
    nu: Fraction
    n_real: Fraction
    n_max: int
    delta_n: Fraction


@dataclass(frozen=True)
class RevivalTimes:
    """The two fundamental periods and the complete revival they build.

    ratio = delta_n + 1/2 in lowest terms; its numerator n and denominator m
    count how many maximum-beat and minimum-revival periods make one
    complete revival: t_rev = m * t_min_rev = n * t_max_beat.
    """

    t_min_rev: float
    t_max_beat: float
    t_rev: float
    m: int
    n: int
    ratio: Fraction


def derive(params: MorseParams) -> DerivedParams:
    """Derive D, nu, n_real, n_max and the quantum defect, all exact."""
    if params.omega_chi == 0:
        raise ValueError("omega_chi: zero (harmonic limit) has no quantum defect")
    nu = params.omega_e / params.omega_chi
    n_real = nu / 2 - Fraction(1, 2)
    if n_real < 0:
        raise ValueError(f"n_real = {n_real} < 0: no bound states")
    n_max = math.floor(n_real)
    delta_n = n_real - n_max
    d_e = params.omega_e**2 / (4 * params.omega_chi)
    return DerivedParams(
        d_e=float(d_e), nu=nu, n_real=n_real, n_max=n_max, delta_n=delta_n
    )


def energy_exact(params: MorseParams, n: RationalLike) -> Fraction:
    """E(n) = omega_e*(n+1/2) - omega_chi*(n+1/2)^2 in exact rational cm^-1.

    Accepts non-integer n; E(n_real) equals the dissociation energy exactly.
    """
    half = Fraction(n) + Fraction(1, 2)
    return params.omega_e * half - params.omega_chi * half * half


def energy_level(derived: DerivedParams, params: MorseParams, n: int) -> float:
    """Bound-level energy E_n in cm^-1 for 0 <= n <= n_max."""
    if not 0 <= n <= derived.n_max:
        raise ValueError(f"n: {n} outside bound range [0, {derived.n_max}] (unbound)")
    return float(energy_exact(params, n))


def beat_gap(params: MorseParams, n: int) -> float:
    """Gap E_n - E_{n-1} = omega_e - 2*omega_chi*n in cm^-1, 1 <= n <= n_max."""
    n_max = math.floor(params.omega_e / (2 * params.omega_chi) - Fraction(1, 2))
    if not 1 <= n <= n_max:
        raise ValueError(f"n: {n} outside gap range [1, {n_max}]")
    return float(params.omega_e - 2 * params.omega_chi * n)


def revival_times(derived: DerivedParams, params: MorseParams) -> RevivalTimes:
    """Minimum-revival and maximum-beat periods plus the complete revival.

    t_min_rev converts pi/omega_chi to picoseconds: 1/(2*c*nu_chi) with
    nu_chi in cm^-1. The reduced ratio delta_n + 1/2 = n/m fixes the integer
    content of the complete revival.
    """
    ratio = derived.delta_n + Fraction(1, 2)
    t_min_rev = 0.5 / (C_CM_PER_PS * float(params.omega_chi))
    t_max_beat = t_min_rev / float(ratio)
    m = ratio.denominator
    n = ratio.numerator
    return RevivalTimes(
        t_min_rev=t_min_rev,
        t_max_beat=t_max_beat,
        t_rev=m * t_min_rev,
        m=m,
        n=n,
        ratio=ratio,
    )


def t_approx(params: MorseParams) -> float:
    """Semiclassical revival estimate 2*pi/omega_chi in ps (2x t_min_rev)."""
    return 1.0 / (C_CM_PER_PS * float(params.omega_chi))
