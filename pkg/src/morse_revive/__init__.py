"""Morse-oscillator revival analysis with Farey-Ford fractional structure."""

from .dynamics import (
    AutocorrTrace,
    Extremum,
    TimeGrid,
    WavefieldGrid,
    autocorrelation,
    classical_period,
    classical_trajectory,
    evolve,
    extremum_detect,
    revival_scan_grid,
    turning_points,
    wavepacket,
)
from .eigen import CoordGrid, EigenState, eigenfunction, laguerre, suggest_grid
from .farey_ford import (
    FareyTree,
    FordCircle,
    ThalesRect,
    annotate_revivals,
    farey_sequence,
    farey_tree,
    ford_circle,
    mediant,
    parents,
    tangent,
    tangent_point,
    thales_rect,
)
from .model import (
    C_CM_PER_PS,
    DerivedParams,
    MorseParams,
    NumericsError,
    RevivalTimes,
    beat_gap,
    derive,
    energy_exact,
    energy_level,
    revival_times,
    t_approx,
)

__version__ = "0.1.0"

__all__ = [
    "AutocorrTrace",
    "C_CM_PER_PS",
    "CoordGrid",
    "DerivedParams",
    "EigenState",
    "Extremum",
    "FareyTree",
    "FordCircle",
    "MorseParams",
    "NumericsError",
    "RevivalTimes",
    "ThalesRect",
    "TimeGrid",
    "WavefieldGrid",
    "annotate_revivals",
    "autocorrelation",
    "beat_gap",
    "classical_period",
    "classical_trajectory",
    "derive",
    "eigenfunction",
    "energy_exact",
    "energy_level",
    "evolve",
    "extremum_detect",
    "farey_sequence",
    "farey_tree",
    "ford_circle",
    "laguerre",
    "mediant",
    "parents",
    "revival_scan_grid",
    "revival_times",
    "suggest_grid",
    "t_approx",
    "tangent",
    "tangent_point",
    "thales_rect",
    "turning_points",
    "wavepacket",
]
