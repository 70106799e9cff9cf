"""Analytic Morse eigenfunctions on a dimensionless coordinate grid.

Wavefunctions are evaluated in q = alpha*x (alpha == 1 internally), where

    phi_n(q) = exp(-y/2) * y^s * norm * L_n^{2s}(y),   y = nu * exp(-q),
    s = (nu - 2n - 1)/2,    norm^2 = (nu - 2n - 1) * n! / Gamma(nu - n).

The prefactor exp(-y/2) * y^s * norm is combined in log space before a single
exponentiation: the separate factors overflow long before the product does.
The Laguerre polynomial is evaluated by the stable upward recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DerivedParams, MorseParams, NumericsError, energy_exact

# exp() saturates just above this; anything larger means the parameters are
# outside what float64 can represent and we refuse to hand back infinities
_LOG_HUGE = math.log(np.finfo(np.float64).max) - 1.0


@dataclass(frozen=True)
class CoordGrid:
    """Uniform grid in the dimensionless bond coordinate q."""

    q_min: float
    q_max: float
    n_points: int = 1024

    def __post_init__(self) -> None:
        if self.n_points < 2:
            raise ValueError(f"n_points: need >= 2, got {self.n_points}")
        if not self.q_min < self.q_max:
            raise ValueError(f"q_min: {self.q_min} must be < q_max {self.q_max}")

    @property
    def spacing(self) -> float:
        return (self.q_max - self.q_min) / (self.n_points - 1)

    def qs(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_points)


@dataclass(frozen=True)
class EigenState:
    """One bound state sampled on a grid; values are real and unit-normed."""

    n: int
    energy: float
    s: float
    grid: CoordGrid
    values: np.ndarray


def laguerre(k: int, a: float, y):
    """Generalized Laguerre polynomial L_k^a(y) by upward recurrence.

    (k+1) L_{k+1} = (2k+1+a-y) L_k - (k+a) L_{k-1}, seeded with L_0 = 1 and
    L_1 = 1 + a - y. Accepts scalars or arrays; requires k >= 0 and a > -1.
    """
    if k < 0:
        raise ValueError(f"k: need >= 0, got {k}")
    if a <= -1:
        raise ValueError(f"a: need > -1, got {a}")
    arr = np.asarray(y, dtype=float)
    prev = np.ones_like(arr)
    if k == 0:
        return prev if arr.ndim else float(prev)
    cur = 1.0 + a - arr
    # overflow surfaces as non-finite values that callers must check; the
    # warning itself is noise
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(1, k):
            prev, cur = cur, ((2 * i + 1 + a - arr) * cur - (i + a) * prev) / (i + 1)
    return cur if arr.ndim else float(cur)


def level_energy(derived: DerivedParams, n: int) -> float:
    """E_n in cm^-1 from derived quantities: D - omega_chi*(n_real - n)^2."""
    omega_chi = 4.0 * derived.d_e / float(derived.nu) ** 2
    return derived.d_e - omega_chi * float(derived.n_real - n) ** 2


def usable_top_state(derived: DerivedParams) -> int:
    """Highest n with a normalizable wavefunction.

    At zero quantum defect the formal top level sits exactly at dissociation
    and its (nu - 2n - 1) normalization factor vanishes, so the level below
    is the highest one with a spatial profile.
    """
    top = derived.n_max if derived.delta_n > 0 else derived.n_max - 1
    if top < 0:
        raise NumericsError("no normalizable bound states for these parameters")
    return top


def eigenfunction(derived: DerivedParams, n: int, grid: CoordGrid) -> EigenState:
    """Evaluate phi_n on the grid, unit-normalized under trapezoidal sum."""
    if not 0 <= n <= derived.n_max:
        raise ValueError(f"n: {n} outside bound range [0, {derived.n_max}]")
    nu = float(derived.nu)
    two_s = nu - 2 * n - 1
    if two_s <= 0:
        raise ValueError(
            f"n: {n} has nu - 2n - 1 = {two_s} <= 0, wavefunction not normalizable"
        )
    s = 0.5 * two_s
    q = grid.qs()
    y = nu * np.exp(-q)
    log_norm = 0.5 * (math.log(two_s) + math.lgamma(n + 1) - math.lgamma(nu - n))
    with np.errstate(divide="ignore"):
        log_y = np.where(y > 0, np.log(y), -np.inf)
    exponent = -0.5 * y + s * log_y + log_norm
    if np.any(exponent > _LOG_HUGE):
        raise NumericsError(
            f"eigenfunction n={n}: log prefactor {np.max(exponent):.3g} exceeds float64"
        )
    poly = laguerre(n, two_s, y)
    if not np.all(np.isfinite(poly)):
        raise NumericsError(f"eigenfunction n={n}: Laguerre recurrence overflowed")
    values = np.exp(exponent) * poly
    values.setflags(write=False)
    return EigenState(
        n=n, energy=level_energy(derived, n), s=s, grid=grid, values=values
    )


def suggest_grid(
    derived: DerivedParams,
    params: MorseParams,
    n_points: int = 1024,
    wall_margin: float = 1.0,
    tail_margin: float = 4.0,
    tail_fraction: float = 1e-8,
) -> CoordGrid:
    """Grid spanning the top usable state with decayed tails at both ends.

    Starts one unit inside the inner turning point and tail_margin decay
    lengths (1/s of the top state) beyond the outer one, then widens until
    |phi_top|^2 at both endpoints is below tail_fraction of its peak.
    """
    top = usable_top_state(derived)
    e_top = float(energy_exact(params, top))
    root = math.sqrt(e_top / derived.d_e)
    q_inner = -math.log(1 + root)
    q_outer = -math.log(1 - root)
    s_top = 0.5 * (float(derived.nu) - 2 * top - 1)
    q_min = q_inner - wall_margin
    q_max = q_outer + tail_margin / s_top
    for _ in range(64):
        grid = CoordGrid(q_min, q_max, n_points)
        density = eigenfunction(derived, top, grid).values ** 2
        peak = float(density.max())
        lo_ok = density[0] < tail_fraction * peak
        hi_ok = density[-1] < tail_fraction * peak
        if lo_ok and hi_ok:
            return grid
        if not lo_ok:
            q_min -= 0.5
        if not hi_ok:
            q_max += 0.25 * (q_max - q_outer)
    raise NumericsError("suggest_grid: endpoint tails failed to decay")
