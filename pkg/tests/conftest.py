"""Shared independent oracles used across the test modules.

These deliberately avoid the code paths they check: the Laguerre oracle is
the explicit finite series, the eigenvalue oracle is a finite-difference
Rayleigh quotient, and sign-change counting stands in for node theory.
"""

import math
from fractions import Fraction

import numpy as np

from morse_revive.model import C_CM_PER_PS

TWO_PI_C = 2.0 * math.pi * C_CM_PER_PS


def laguerre_series(k: int, a, y) -> float:
    """L_k^a(y) as the explicit sum over j of (-1)^j C(k+a, k-j) y^j / j!.

    Evaluated in exact rational arithmetic (the generalized binomial is the
    product of (a+i) for i = j+1..k over (k-j)!), so the alternating sum has
    no cancellation error; only the final float conversion rounds.
    """
    a = Fraction(a)
    y = Fraction(y)
    total = Fraction(0)
    for j in range(k + 1):
        binom = Fraction(1)
        for i in range(j + 1, k + 1):
            binom *= a + i
        binom /= math.factorial(k - j)
        total += (-1) ** j * binom * y**j / math.factorial(j)
    return float(total)


def rayleigh_quotient(qs: np.ndarray, phi: np.ndarray, omega_chi: float, d_e: float) -> float:
    """Energy of phi under a finite-difference Morse Hamiltonian (cm^-1).

    H = -omega_chi d^2/dq^2 + D (1 - e^-q)^2, evaluated in the gradient form
    so no boundary rows are needed (the tails vanish).
    """
    dq = qs[1] - qs[0]
    dphi = np.gradient(phi, dq)
    potential = d_e * (1.0 - np.exp(-qs)) ** 2
    kinetic = omega_chi * np.trapezoid(dphi * dphi, qs)
    pot = np.trapezoid(potential * phi * phi, qs)
    return (kinetic + pot) / np.trapezoid(phi * phi, qs)


def count_sign_changes(values: np.ndarray, rel_threshold: float = 1e-9) -> int:
    """Sign changes of a sampled function, ignoring the underflowed tails."""
    kept = values[np.abs(values) > rel_threshold * np.max(np.abs(values))]
    signs = np.sign(kept)
    return int(np.sum(signs[1:] * signs[:-1] < 0))
