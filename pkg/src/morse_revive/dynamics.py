"""Wavepacket evolution, autocorrelation spectra, and classical trajectories.

Evolution is analytic: an equal-coefficient sum over bound eigenstates with
phase angle 2*pi*c*E_n*t (E_n in cm^-1, t in ps). Nothing here propagates a
PDE; the classical trajectories integrate Newton's equation for the same
potential as an independent, visual cross-check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .eigen import CoordGrid, eigenfunction, usable_top_state
from .model import C_CM_PER_PS, DerivedParams, MorseParams, NumericsError, energy_exact

TWO_PI_C = 2.0 * math.pi * C_CM_PER_PS

# Revival scans sample 2*lcm(1..7) intervals per revival so every time
# fraction of depth <= 7 lands exactly on a sample.
DEFAULT_SCAN_INTERVALS = 840

# Refuse to allocate wavefields beyond this unless the caller raises the cap.
DEFAULT_MAX_FIELD_BYTES = 1 << 30


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time samples t_min..t_max (ps), endpoints included.

    A single-sample grid (n_steps=1) is allowed and means "evaluate at
    t_min only".
    """

    t_min: float
    t_max: float
    n_steps: int

    def __post_init__(self) -> None:
        if self.n_steps < 1:
            raise ValueError(f"n_steps: need >= 1, got {self.n_steps}")
        if not self.t_min < self.t_max:
            raise ValueError(f"t_min: {self.t_min} must be < t_max {self.t_max}")

    @property
    def spacing(self) -> float:
        if self.n_steps == 1:
            return self.t_max - self.t_min
        return (self.t_max - self.t_min) / (self.n_steps - 1)

    def times(self) -> np.ndarray:
        if self.n_steps == 1:
            return np.array([self.t_min])
        return np.linspace(self.t_min, self.t_max, self.n_steps)


@dataclass(frozen=True)
class WavefieldGrid:
    """|psi| and complex psi sampled on a time x coordinate lattice."""

    coord: CoordGrid
    time: TimeGrid
    amplitude: np.ndarray  # complex, [time][coord]
    magnitude: np.ndarray  # |amplitude|


@dataclass(frozen=True)
class Extremum:
    """A detected local extremum of |A(t)|, optionally tagged by a fraction."""

    t: float
    kind: str  # "peak" | "node"
    index: int
    matched_fraction: Fraction | None = None
    expected_kind: str | None = None


@dataclass(frozen=True)
class AutocorrTrace:
    """Complex A(t) samples with detected extrema."""

    time: TimeGrid
    values: np.ndarray
    extrema: tuple[Extremum, ...]

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)


def bound_energies(derived: DerivedParams, params: MorseParams) -> np.ndarray:
    """E_n in cm^-1 for every bound level n = 0..n_max."""
    return np.array(
        [float(energy_exact(params, n)) for n in range(derived.n_max + 1)]
    )


def spatial_states(
    derived: DerivedParams, params: MorseParams, grid: CoordGrid
) -> tuple[list[int], np.ndarray]:
    """Eigenfunction matrix for every state that has a spatial profile.

    Returns the included quantum numbers and a (state, grid) array. At zero
    quantum defect the top level is dropped (degenerate wavefunction) with a
    warning; its energy still contributes to autocorrelation phases.
    """
    top = usable_top_state(derived)
    if top < derived.n_max:
        warnings.warn(
            f"quantum defect is 0: level n={derived.n_max} sits exactly at "
            "dissociation and is excluded from spatial wavefields",
            RuntimeWarning,
            stacklevel=2,
        )
    ns = list(range(top + 1))
    phi = np.array([eigenfunction(derived, n, grid).values for n in ns])
    return ns, phi


def wavepacket(
    derived: DerivedParams, params: MorseParams, grid: CoordGrid, t: float
) -> np.ndarray:
    """Equal-coefficient packet sum_n phi_n(q) exp(-i 2 pi c E_n t) at one t."""
    if not math.isfinite(t):
        raise ValueError(f"t: must be finite, got {t}")
    ns, phi = spatial_states(derived, params, grid)
    energies = np.array([float(energy_exact(params, n)) for n in ns])
    phases = np.exp(-1j * TWO_PI_C * energies * t)
    return phases @ phi


def evolve(
    derived: DerivedParams,
    params: MorseParams,
    grid: CoordGrid,
    tgrid: TimeGrid,
    max_bytes: int = DEFAULT_MAX_FIELD_BYTES,
) -> WavefieldGrid:
    """Wavefield over the full time x coordinate lattice.

    Each row is the packet at one time sample; rows are independent, so the
    whole field is a single phase-matrix product.
    """
    # complex amplitude + real magnitude per lattice point
    need = tgrid.n_steps * grid.n_points * (16 + 8)
    if need > max_bytes:
        raise NumericsError(
            f"wavefield needs {need} bytes but the limit is {max_bytes}; "
            "shrink the grid or raise max_bytes"
        )
    ns, phi = spatial_states(derived, params, grid)
    energies = np.array([float(energy_exact(params, n)) for n in ns])
    phases = np.exp(-1j * TWO_PI_C * np.outer(tgrid.times(), energies))
    amplitude = phases @ phi
    magnitude = np.abs(amplitude)
    amplitude.setflags(write=False)
    magnitude.setflags(write=False)
    return WavefieldGrid(
        coord=grid, time=tgrid, amplitude=amplitude, magnitude=magnitude
    )


def extremum_detect(
    times: np.ndarray,
    magnitudes: np.ndarray,
    window: int = 5,
    prominence: float = 0.01,
) -> list[Extremum]:
    """Strict local maxima/minima of a sampled trace.

    A sample is a peak (node) if it is strictly above (below) every other
    sample in the centered window of half-width `window`, and differs from
    the mean of the two window-edge samples by at least `prominence` times
    the first sample. Only interior samples with a full window qualify, so
    a monotone trace yields nothing; periodic traces can classify their
    endpoints separately (see annotate_revivals).
    """
    mags = np.asarray(magnitudes, dtype=float)
    times = np.asarray(times, dtype=float)
    n = len(mags)
    if n < 2 * window + 1:
        raise ValueError(f"need at least {2 * window + 1} samples, got {n}")
    threshold = prominence * mags[0]
    found: list[Extremum] = []
    for j in range(window, n - window):
        lo = j - window
        hi = j + window + 1
        center = mags[j]
        others = np.concatenate([mags[lo:j], mags[j + 1 : hi]])
        edge_mean = 0.5 * (mags[lo] + mags[hi - 1])
        if center > np.max(others) and abs(center - edge_mean) >= threshold:
            found.append(Extremum(t=float(times[j]), kind="peak", index=j))
        elif center < np.min(others) and abs(center - edge_mean) >= threshold:
            found.append(Extremum(t=float(times[j]), kind="node", index=j))
    return found


def autocorrelation(
    derived: DerivedParams,
    params: MorseParams,
    tgrid: TimeGrid,
    window: int = 5,
    prominence: float = 0.01,
) -> AutocorrTrace:
    """A(t) = sum_n exp(-i 2 pi c E_n t) over every bound level.

    All n_max+1 energies enter, including a zero-defect top level whose
    spatial profile is degenerate; extrema of |A| are detected immediately.
    """
    energies = bound_energies(derived, params)
    times = tgrid.times()
    values = np.exp(-1j * TWO_PI_C * np.outer(times, energies)).sum(axis=1)
    values.setflags(write=False)
    if len(times) >= 2 * window + 1:
        extrema = tuple(
            extremum_detect(times, np.abs(values), window=window, prominence=prominence)
        )
    else:
        extrema = ()
    return AutocorrTrace(time=tgrid, values=values, extrema=extrema)


def revival_scan_grid(t_rev: float, n_intervals: int = DEFAULT_SCAN_INTERVALS) -> TimeGrid:
    """Time grid over one complete revival suited to extremum detection."""
    return TimeGrid(0.0, t_rev, n_intervals + 1)


def turning_points(derived: DerivedParams, energy: float) -> tuple[float, float]:
    """Classical turning points q -/+ = -ln(1 +/- sqrt(E/D)) for 0 < E < D."""
    if energy >= derived.d_e:
        raise ValueError(f"energy: {energy} >= D = {derived.d_e}, unbound")
    if energy <= 0:
        raise ValueError(f"energy: need > 0, got {energy}")
    root = math.sqrt(energy / derived.d_e)
    return -math.log(1 + root), -math.log(1 - root)


def _acceleration(q: float, omega_ang: float) -> float:
    # q'' = -(omega_e^2/2D) dV/dq with V = D(1-e^-q)^2, so the small-q
    # oscillation frequency is exactly omega_e
    e = math.exp(-q)
    return -omega_ang * omega_ang * (1.0 - e) * e


def _rk4_step(q: float, v: float, h: float, omega_ang: float) -> tuple[float, float]:
    k1q, k1v = v, _acceleration(q, omega_ang)
    k2q, k2v = v + 0.5 * h * k1v, _acceleration(q + 0.5 * h * k1q, omega_ang)
    k3q, k3v = v + 0.5 * h * k2v, _acceleration(q + 0.5 * h * k2q, omega_ang)
    k4q, k4v = v + h * k3v, _acceleration(q + h * k3q, omega_ang)
    return (
        q + h / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q),
        v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v),
    )


def _mechanical_energy(q: float, v: float, d_e: float, omega_ang: float) -> float:
    # kinetic term in cm^-1: v^2 * D / omega_e^2
    band = 1.0 - math.exp(-q)
    return v * v * d_e / (omega_ang * omega_ang) + d_e * band * band


def classical_trajectory(
    derived: DerivedParams,
    params: MorseParams,
    energy: float,
    tgrid: TimeGrid,
    substeps: int = 1,
    drift_limit: float = 1e-6,
) -> np.ndarray:
    """q(t) from rest at the inner turning point, fixed-step RK4.

    Time is in ps and the small-oscillation angular frequency equals
    2*pi*c*omega_e. Relative energy drift beyond drift_limit means the step
    is too coarse and raises instead of returning a degraded orbit.
    """
    if substeps < 1:
        raise ValueError(f"substeps: need >= 1, got {substeps}")
    q_inner, _ = turning_points(derived, energy)
    omega_ang = TWO_PI_C * float(params.omega_e)
    times = tgrid.times()
    out = np.empty(len(times))
    q, v = q_inner, 0.0
    e_ref = _mechanical_energy(q, v, derived.d_e, omega_ang)
    drift = 0.0
    out[0] = q
    for i in range(1, len(times)):
        h = (times[i] - times[i - 1]) / substeps
        for _ in range(substeps):
            q, v = _rk4_step(q, v, h, omega_ang)
        drift = max(
            drift,
            abs(_mechanical_energy(q, v, derived.d_e, omega_ang) - e_ref) / e_ref,
        )
        out[i] = q
    if drift > drift_limit:
        raise NumericsError(
            f"classical_trajectory: energy drift {drift:.3g} exceeds "
            f"{drift_limit:.3g}; refine the time grid or raise substeps"
        )
    out.setflags(write=False)
    return out


def classical_period(
    derived: DerivedParams,
    params: MorseParams,
    energy: float,
    steps_per_harmonic_period: int = 4096,
    max_harmonic_periods: float = 1e4,
) -> float:
    """Oscillation period (ps) measured from the integrated orbit.

    Integrates until the velocity recrosses zero going outward (one full
    period from the inner turning point) and refines the crossing by
    bisection on RK4 substeps.
    """
    q_inner, _ = turning_points(derived, energy)
    omega_ang = TWO_PI_C * float(params.omega_e)
    h = (2.0 * math.pi / omega_ang) / steps_per_harmonic_period
    q, v = q_inner, 0.0
    t = 0.0
    t_limit = max_harmonic_periods * 2.0 * math.pi / omega_ang
    seen_outward = False
    while t < t_limit:
        q2, v2 = _rk4_step(q, v, h, omega_ang)
        t2 = t + h
        if seen_outward and v < 0.0 and v2 >= 0.0:
            lo_q, lo_v, lo_t, step = q, v, t, h
            for _ in range(60):
                step *= 0.5
                qm, vm = _rk4_step(lo_q, lo_v, step, omega_ang)
                if vm < 0.0:
                    lo_q, lo_v, lo_t = qm, vm, lo_t + step
            return lo_t
        if v2 > 0.0:
            seen_outward = True
        q, v, t = q2, v2, t2
    raise NumericsError("classical_period: no period found within the time limit")
