"""Exact fraction geometry: Farey order, Ford tangency, Thales rectangles."""

import math
from fractions import Fraction
from itertools import combinations

import pytest

from morse_revive.dynamics import autocorrelation, revival_scan_grid
from morse_revive.farey_ford import (
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
from morse_revive.model import MorseParams, derive, revival_times

F = Fraction

FIG4_FRACTIONS = [
    F(0), F(1, 7), F(1, 6), F(1, 5), F(1, 4), F(2, 7), F(1, 3), F(2, 5),
    F(3, 7), F(1, 2), F(4, 7), F(3, 5), F(2, 3), F(5, 7), F(3, 4), F(4, 5),
    F(5, 6), F(6, 7), F(1),
]


def exact_circle(f: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    r = F(1, 2 * f.denominator**2)
    return f, 1 - r, r


def brute_farey(max_den: int) -> list[Fraction]:
    return sorted(
        {F(p, q) for q in range(1, max_den + 1) for p in range(q + 1)}
    )


def test_mediant_examples():
    assert mediant(F(0), F(1)) == F(1, 2)
    assert mediant(F(0), F(1, 2)) == F(1, 3)
    assert mediant(F(1, 2), F(1)) == F(2, 3)
    assert mediant(F(2, 4), F(2, 2)) == F(2, 3)  # reduces its inputs' sum
    with pytest.raises(ValueError):
        mediant(F(1, 2), F(1, 3))


def test_farey_sequence_small_and_fig4():
    assert farey_sequence(1) == [F(0), F(1)]
    assert farey_sequence(2) == [F(0), F(1, 2), F(1)]
    assert farey_sequence(7) == FIG4_FRACTIONS
    assert len(farey_sequence(7)) == 19
    with pytest.raises(ValueError):
        farey_sequence(0)


def test_farey_sequence_matches_brute_force():
    for k in range(1, 16):
        assert farey_sequence(k) == brute_farey(k)


def test_farey_adjacency_unimodular():
    for k in (2, 7, 23, 50):
        seq = farey_sequence(k)
        for left, right in zip(seq, seq[1:]):
            assert (
                right.numerator * left.denominator
                - left.numerator * right.denominator
                == 1
            )


def test_ford_circle_examples():
    c = ford_circle(F(0))
    assert c.center == (0.0, 0.5) and c.radius == 0.5
    c = ford_circle(F(1, 2))
    assert c.radius == 0.125 and c.center == (0.5, 0.875)
    c = ford_circle(F(2, 3))
    assert c.center == (pytest.approx(2 / 3), pytest.approx(17 / 18))
    assert c.radius == pytest.approx(1 / 18)
    text = ford_circle(F(1, 2), textbook=True)
    assert text.center == (0.5, 0.125)  # rests on y = 0 instead


def test_tangency_examples():
    assert tangent(F(0), F(1, 2))
    assert tangent(F(1, 3), F(1, 2))
    assert not tangent(F(1, 4), F(1, 2))


def test_tangency_iff_unimodular_exact_geometry():
    fractions = brute_farey(12)
    for a, b in combinations(fractions, 2):
        xa, ya, ra = exact_circle(a)
        xb, yb, rb = exact_circle(b)
        gap = (xa - xb) ** 2 + (ya - yb) ** 2 - (ra + rb) ** 2
        assert gap >= 0  # circles never overlap
        assert (gap == 0) == tangent(a, b)


def test_tangent_point_examples():
    assert tangent_point(F(0), F(1)) == (0.5, 0.5)
    x, y = tangent_point(F(0), F(1, 2))
    assert (x, y) == (pytest.approx(0.4, abs=1e-15), pytest.approx(0.8, abs=1e-15))
    assert y == pytest.approx(2 * x, abs=1e-15)  # on the 1/2 vector line
    with pytest.raises(ValueError):
        tangent_point(F(1, 4), F(1, 2))


def test_tangent_point_lies_on_both_circles():
    fractions = brute_farey(8)
    for a, b in combinations(fractions, 2):
        if not tangent(a, b):
            continue
        px, py = tangent_point(a, b)
        for f in (a, b):
            circle = ford_circle(f)
            dist = math.hypot(px - circle.center[0], py - circle.center[1])
            assert abs(dist - circle.radius) < 1e-12


def test_parents_examples():
    assert parents(F(1, 3)) == (F(0), F(1, 2))
    assert parents(F(1, 2)) == (F(0), F(1))
    assert parents(F(3, 5)) == (F(1, 2), F(2, 3))
    for f in (F(0), F(1)):
        with pytest.raises(ValueError):
            parents(f)


def test_parents_brute_force_oracle():
    # the unique smaller-denominator tangent pair whose mediant gives 3/5
    candidates = brute_farey(4)
    matches = [
        (a, b)
        for a, b in combinations(candidates, 2)
        if mediant(a, b) == F(3, 5) and tangent(a, F(3, 5)) and tangent(b, F(3, 5))
    ]
    assert matches == [(F(1, 2), F(2, 3))]


def test_parents_mediant_roundtrip():
    for f in brute_farey(50):
        if f in (0, 1):
            continue
        left, right = parents(f)
        assert left < f < right
        assert mediant(left, right) == f
        assert left.denominator < f.denominator
        assert right.denominator < f.denominator
        assert tangent(left, f) and tangent(right, f)


def test_farey_tree():
    tree = farey_tree(3)
    assert [(d, f) for d, f in tree.levels if d == 3] == [
        (3, F(1, 3)),
        (3, F(2, 3)),
    ]
    tree7 = farey_tree(7)
    assert len(tree7.levels) == 19
    assert [f for _, f in tree7.levels] == FIG4_FRACTIONS
    assert all(d == f.denominator for d, f in tree7.levels)


def test_thales_rect_pixel_counts():
    assert (thales_rect(F(1, 2)).pixel_rows, thales_rect(F(1, 2)).pixel_cols) == (1, 2)
    assert (thales_rect(F(2, 3)).pixel_rows, thales_rect(F(2, 3)).pixel_cols) == (2, 3)
    for f in (F(0), F(1)):
        with pytest.raises(ValueError):
            thales_rect(f)


def test_thales_rect_geometry():
    for f in brute_farey(12):
        if f in (0, 1):
            continue
        rect = thales_rect(f)
        circle = ford_circle(f)
        cx, cy = circle.center
        top, side, bottom, antipode = rect.corners
        # the named diagonal is the vertical diameter
        assert top == (pytest.approx(float(f), abs=1e-15), 1.0)
        assert bottom[0] == pytest.approx(float(f), abs=1e-15)
        assert top[1] - bottom[1] == pytest.approx(2 * circle.radius, abs=1e-15)
        for x, y in rect.corners:
            assert math.hypot(x - cx, y - cy) == pytest.approx(
                circle.radius, abs=1e-12
            )
        # Thales: the diameter subtends right angles at the other corners
        for corner in (side, antipode):
            v1 = (top[0] - corner[0], top[1] - corner[1])
            v2 = (bottom[0] - corner[0], bottom[1] - corner[1])
            assert abs(v1[0] * v2[0] + v1[1] * v2[1]) < 1e-12
        # aspect ratio num:den and square pixel cells
        short = math.hypot(side[0] - bottom[0], side[1] - bottom[1])
        long = math.hypot(side[0] - top[0], side[1] - top[1])
        n, d = f.numerator, f.denominator
        assert short * d == pytest.approx(long * n, abs=1e-12)
        cell = 2 * circle.radius / math.hypot(n, d)
        assert short == pytest.approx(n * cell, abs=1e-12)
        assert long == pytest.approx(d * cell, abs=1e-12)


def test_annotate_revivals_tags_and_parity():
    p = MorseParams(42, 1)
    d = derive(p)
    t_rev = revival_times(d, p).t_rev
    trace = autocorrelation(d, p, revival_scan_grid(t_rev))
    tagged = annotate_revivals(trace, t_rev, max_depth=7)
    by_frac = {
        e.matched_fraction: e
        for e in tagged.extrema
        if e.matched_fraction is not None
    }
    assert set(by_frac) == set(FIG4_FRACTIONS)
    assert by_frac[F(0)].kind == "peak" and by_frac[F(0)].t == 0.0
    assert by_frac[F(1)].kind == "peak" and by_frac[F(1)].t == pytest.approx(t_rev)
    assert by_frac[F(1, 2)].kind == "node"
    assert by_frac[F(1, 3)].kind == "peak"
    for frac, ext in by_frac.items():
        expected = "peak" if frac.denominator % 2 == 1 else "node"
        assert ext.expected_kind == expected
        assert ext.kind == expected
        assert abs(ext.t - float(frac) * t_rev) <= trace.time.spacing * (1 + 1e-9)
    untagged = [e for e in tagged.extrema if e.matched_fraction is None]
    assert untagged  # deeper-depth structure stays unlabeled
