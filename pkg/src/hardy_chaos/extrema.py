"""Extrema of |phi| over the disk via boundary sampling and golden-section refinement."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .roots import EPS_BOUNDARY, Location

CIRCLE_SAMPLES = 4096
N_BRACKETS = 8
EPS_OPT = 1e-10

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


def golden_section_min(f, a, b, tol=1e-12, max_iter=200):
    """Minimize a unimodal ``f`` on [a, b]; returns (x, f(x))."""
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if yc < yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
    return (c, yc) if yc < yd else (d, yd)


def _refine(f_theta, theta, values, n_brackets, tol):
    """Golden-section refinement of the ``n_brackets`` best local minima of a
    periodic sampled function. Returns (best_theta, best_value)."""
    m = len(values)
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    local = np.flatnonzero((values <= left) & (values <= right))
    if local.size == 0:
        local = np.array([int(np.argmin(values))])
    local = local[np.argsort(values[local], kind="stable")][:n_brackets]
    step = 2 * np.pi / m
    best_t = float(theta[local[0]])
    best_v = float(values[local[0]])
    for k in local:
        t, v = golden_section_min(f_theta, theta[k] - step, theta[k] + step, tol=tol)
        if v < best_v:
            best_t, best_v = t, v
    return best_t % (2 * np.pi), best_v


@dataclass(frozen=True)
class ModulusExtrema:
    inf_mod: float
    sup_mod: float
    argmin: float  # angle of the boundary minimum, or nan when a zero lies inside
    argmax: float
    circle_min: float  # min |phi| on the circle, regardless of interior zeros
    circle_spread: float  # max - min of |phi| on the circle samples

    def __iter__(self):
        return iter((self.inf_mod, self.sup_mod))


def modulus_extrema(phi, samples=CIRCLE_SAMPLES, n_brackets=N_BRACKETS, tol=EPS_OPT,
                    eps_b=EPS_BOUNDARY):
    """inf and sup of |phi| over the unit disk.

    The sup is attained on the circle (maximum modulus). The inf is 0 when
    the numerator has a zero inside the disk, otherwise the circle minimum.
    """
    theta = 2 * np.pi * np.arange(samples) / samples
    vals = np.abs(phi.eval(np.exp(1j * theta)))

    def absphi(t):
        return abs(phi.eval(complex(math.cos(t), math.sin(t))))

    # golden-section works on the angle; value accuracy is quadratic in it
    angle_tol = max(tol, 1e-12)
    tmin, vmin = _refine(absphi, theta, vals, n_brackets, angle_tol)
    tmax, negmax = _refine(lambda t: -absphi(t), theta, -vals, n_brackets, angle_tol)
    vmax = -negmax
    roots = phi.numerator_roots(eps_b)
    zero_inside = phi.is_zero or (roots is not None and roots.count(Location.INSIDE) > 0)
    spread = float(vmax - vmin)
    if zero_inside:
        return ModulusExtrema(0.0, float(vmax), float("nan"), float(tmax), float(vmin), spread)
    return ModulusExtrema(float(vmin), float(vmax), float(tmin), float(tmax), float(vmin), spread)


def affine_extrema(a, b):
    """Closed form for phi = a + b z."""
    a, b = abs(a), abs(b)
    return max(a - b, 0.0), a + b
