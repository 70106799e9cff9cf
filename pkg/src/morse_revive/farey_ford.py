"""Farey fractions, Ford circles, Thales rectangles, and revival tagging.

Every fraction n/d in [0, 1] owns a circle of diameter 1/d^2 tangent to the
line y = 1 from below at x = n/d (a flag flips to the textbook convention of
circles resting on y = 0). Two circles touch exactly when the fractions are
unimodular neighbors (|ad - bc| = 1), which is also the mediant-parent
relation of the Stern-Brocot construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .dynamics import AutocorrTrace, Extremum

ZERO = Fraction(0, 1)
ONE = Fraction(1, 1)


@dataclass(frozen=True)
class FordCircle:
    frac: Fraction
    center: tuple[float, float]
    radius: float


@dataclass(frozen=True)
class FareyTree:
    """All fractions of denominator <= max_depth, ascending, depth = den."""

    max_depth: int
    levels: tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class ThalesRect:
    """Rectangle inscribed in a Ford circle with the vertical diameter as
    one diagonal; its sides split into a num x den lattice of squares."""

    frac: Fraction
    corners: tuple[tuple[float, float], ...]
    pixel_rows: int
    pixel_cols: int


def mediant(a: Fraction, b: Fraction) -> Fraction:
    """Farey sum (a.num + b.num) / (a.den + b.den), reduced."""
    if not a < b:
        raise ValueError(f"mediant: need a < b, got {a} >= {b}")
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def farey_sequence(max_den: int) -> list[Fraction]:
    """All irreducible fractions in [0, 1] with denominator <= max_den."""
    if max_den < 1:
        raise ValueError(f"max_den: need >= 1, got {max_den}")
    # standard next-term recurrence; consecutive terms stay unimodular
    a, b, c, d = 0, 1, 1, max_den
    sequence = [Fraction(0, 1)]
    while c <= max_den:
        k = (max_den + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        sequence.append(Fraction(a, b))
    return sequence


def ford_circle(frac: Fraction, textbook: bool = False) -> FordCircle:
    """Circle of radius 1/(2 d^2) tangent at x = n/d.

    Hangs below y = 1 by default; textbook=True rests it on y = 0 instead.
    """
    d = frac.denominator
    radius = Fraction(1, 2 * d * d)
    y = radius if textbook else 1 - radius
    return FordCircle(
        frac=frac, center=(float(frac), float(y)), radius=float(radius)
    )


def tangent(a: Fraction, b: Fraction) -> bool:
    """True iff the circles of a and b touch: |a.num*b.den - a.den*b.num| = 1."""
    return abs(a.numerator * b.denominator - a.denominator * b.numerator) == 1


def _exact_center(frac: Fraction) -> tuple[Fraction, Fraction]:
    r = Fraction(1, 2 * frac.denominator**2)
    return frac, 1 - r


def tangent_point(a: Fraction, b: Fraction) -> tuple[float, float]:
    """Touch point of two tangent Ford circles.

    Divides the center-to-center segment in the ratio of the radii, computed
    in exact rational arithmetic before conversion to float.
    """
    if not tangent(a, b):
        raise ValueError(f"tangent_point: {a} and {b} are not tangent")
    ax, ay = _exact_center(a)
    bx, by = _exact_center(b)
    ra = Fraction(1, 2 * a.denominator**2)
    rb = Fraction(1, 2 * b.denominator**2)
    w = ra / (ra + rb)
    return (float(ax + (bx - ax) * w), float(ay + (by - ay) * w))


def parents(frac: Fraction) -> tuple[Fraction, Fraction]:
    """Stern-Brocot parents: the unique tangent pair whose mediant is frac.

    The left parent a/b solves p*b = 1 (mod q) with 1 <= b < q; the right
    parent is the complement (p-a)/(q-b). Both denominators are below q.
    """
    if not ZERO < frac < ONE:
        raise ValueError(f"parents: {frac} has none (endpoints excluded)")
    p, q = frac.numerator, frac.denominator
    b = pow(p, -1, q)
    a = (p * b - 1) // q
    left = Fraction(a, b)
    right = Fraction(p - a, q - b)
    return left, right


def farey_tree(max_depth: int) -> FareyTree:
    """Farey fractions annotated by depth (the reduced denominator)."""
    if max_depth < 1:
        raise ValueError(f"max_depth: need >= 1, got {max_depth}")
    levels = tuple((f.denominator, f) for f in farey_sequence(max_depth))
    return FareyTree(max_depth=max_depth, levels=levels)


def thales_rect(frac: Fraction) -> ThalesRect:
    """Inscribed rectangle whose aspect ratio is num:den.

    One diagonal is the circle's vertical diameter from the tangent point
    (n/d, 1) down to (n/d, 1 - 1/d^2). The second diagonal starts where the
    fraction's vector line (through the origin and the tangent point, slope
    d/n) recrosses the circle and ends at that point's antipode. Whenever
    frac has a parent with denominator equal to n (every 1/d and d-1/d),
    that corner is simultaneously the tangent point with the parent circle.
    Corner coordinates are exact rationals converted to float on output.
    """
    if not ZERO < frac < ONE:
        raise ValueError(f"thales_rect: need 0 < frac < 1, got {frac}")
    n, d = frac.numerator, frac.denominator
    cx, cy = _exact_center(frac)
    diameter = Fraction(1, d * d)
    top = (cx, Fraction(1))
    bottom = (cx, 1 - diameter)
    # chord along (n, d) through the top tangent point; u is the chord
    # parameter of the second intersection
    u = Fraction(1, d * (n * n + d * d))
    side = (top[0] - n * u, top[1] - d * u)
    antipode = (2 * cx - side[0], 2 * cy - side[1])
    corners = tuple(
        (float(x), float(y)) for x, y in (top, side, bottom, antipode)
    )
    return ThalesRect(frac=frac, corners=corners, pixel_rows=n, pixel_cols=d)


def _endpoint_extrema(trace: AutocorrTrace, window: int, prominence: float) -> list[Extremum]:
    """Classify t=0 / t=t_rev of a one-period trace with a wrapped window.

    The two endpoint samples show the same instant of a periodic signal, so
    the neighborhood of sample 0 wraps around through the end of the trace
    (dropping the duplicate). A qualifying endpoint is reported at both
    indices, once per endpoint fraction.
    """
    mags = trace.magnitudes()
    times = trace.time.times()
    ring = mags[:-1]
    n_ring = len(ring)
    if n_ring < 2 * window + 1:
        return []
    others = np.concatenate([ring[-window:], ring[1 : window + 1]])
    center = ring[0]
    edge_mean = 0.5 * (ring[-window] + ring[window])
    threshold = prominence * mags[0]
    kind = None
    if center > np.max(others) and abs(center - edge_mean) >= threshold:
        kind = "peak"
    elif center < np.min(others) and abs(center - edge_mean) >= threshold:
        kind = "node"
    if kind is None:
        return []
    last = len(mags) - 1
    return [
        Extremum(t=float(times[0]), kind=kind, index=0),
        Extremum(t=float(times[last]), kind=kind, index=last),
    ]


def annotate_revivals(
    trace: AutocorrTrace,
    t_rev: float,
    max_depth: int,
    tol: float | None = None,
    window: int = 5,
    prominence: float = 0.01,
) -> AutocorrTrace:
    """Tag detected extrema that sit at Farey fractions of the revival.

    An extremum within tol (default: one time-grid step, inclusive) of
    f*t_rev is tagged with f and with the parity-expected kind: peak for odd
    reduced denominator, node for even. Unmatched extrema pass through
    untouched. Because the trace spans exactly one revival, the endpoints
    are classified against a periodic wrap of its samples and stand in for
    the 0/1 and 1/1 full revivals.
    """
    if tol is None:
        tol = trace.time.spacing
    # inclusive comparison: an extremum exactly one step away still counts
    tol = tol * (1.0 + 1e-9)
    extrema = list(trace.extrema)
    present = {e.index for e in extrema}
    extrema.extend(
        e
        for e in _endpoint_extrema(trace, window, prominence)
        if e.index not in present
    )
    extrema.sort(key=lambda e: e.index)
    for frac in farey_sequence(max_depth):
        target = float(frac) * t_rev
        best = None
        best_dist = math.inf
        for i, ext in enumerate(extrema):
            dist = abs(ext.t - target)
            if dist < best_dist:
                best, best_dist = i, dist
        if best is None or best_dist > tol:
            continue
        expected = "peak" if frac.denominator % 2 == 1 else "node"
        extrema[best] = replace(
            extrema[best], matched_fraction=frac, expected_kind=expected
        )
    return AutocorrTrace(
        time=trace.time, values=trace.values, extrema=tuple(extrema)
    )


__all__ = [
    "FordCircle",
    "FareyTree",
    "ThalesRect",
    "Extremum",
    "mediant",
    "farey_sequence",
    "ford_circle",
    "tangent",
    "tangent_point",
    "parents",
    "farey_tree",
    "thales_rect",
    "annotate_revivals",
]
