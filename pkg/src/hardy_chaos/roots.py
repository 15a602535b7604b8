"""Polynomial roots by Aberth-Ehrlich simultaneous iteration, with in/on/out
classification relative to the unit circle."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import RootConvergenceError

EPS_ROOT = 1e-12
EPS_BOUNDARY = 1e-9
CLUSTER_RADIUS = 1e-7
MAX_ITER = 200


class Location(str, Enum):
    INSIDE = "INSIDE"
    BOUNDARY = "BOUNDARY"
    OUTSIDE = "OUTSIDE"


def classify_point(z, eps_b=EPS_BOUNDARY):
    r = abs(z)
    if abs(r - 1.0) <= eps_b:
        return Location.BOUNDARY
    return Location.INSIDE if r < 1.0 else Location.OUTSIDE


@dataclass(frozen=True)
class Root:
    location: complex
    multiplicity: int
    where: Location


@dataclass(frozen=True)
class RootSet:
    roots: tuple
    degree: int
    leading: complex
    max_residual: float

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def count(self, where):
        """Number of roots (with multiplicity) in the given location class."""
        return sum(r.multiplicity for r in self.roots if r.where == where)

    def expanded(self, where=None):
        """Flat list of root locations repeated by multiplicity."""
        out = []
        for r in self.roots:
            if where is None or r.where == where:
                out.extend([r.location] * r.multiplicity)
        return out

    @property
    def has_boundary(self):
        return any(r.where == Location.BOUNDARY for r in self.roots)


def strip_trailing(coeffs, rel_tol=0.0):
    """Drop highest-order coefficients that are zero (or below ``rel_tol`` of
    the largest magnitude)."""
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0:
        return np.zeros(1, dtype=complex)
    thresh = rel_tol * np.max(np.abs(c))
    n = c.size
    while n > 1 and abs(c[n - 1]) <= thresh:
        n -= 1
    return c[:n].copy()


def horner(coeffs, z):
    """Evaluate ascending-order coefficients at ``z`` (scalar or array)."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for a in coeffs[::-1]:
        acc = acc * z + a
    return acc


def _horner_with_derivative(coeffs, z):
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for a in coeffs[::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _relative_residual(coeffs, z):
    """|p(z)| / (max|a| * max(1, |z|)^d); outside the disk this is evaluated
    as the reversed polynomial at 1/z so huge roots cannot overflow."""
    z = np.asarray(z, dtype=complex)
    out = np.abs(horner(coeffs, z))
    big = np.abs(z) > 1
    if np.any(big):
        out[big] = np.abs(horner(coeffs[::-1], 1.0 / z[big]))
    return out / np.max(np.abs(coeffs))


def _initial_guesses(c):
    """Starting points on circles read off the Newton polygon of log|a_k|:
    each upper-hull edge from k to k' carries k' - k points at radius
    |a_k / a_k'|^(1/(k' - k)). Widely spread root moduli then start on
    their own scale."""
    d = len(c) - 1
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(c))
    pts = [k for k in range(d + 1) if np.isfinite(logs[k])]
    hull = []
    for k in pts:
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            # drop j when it lies on or below the chord i -> k
            if (logs[j] - logs[i]) * (k - i) <= (logs[k] - logs[i]) * (j - i):
                hull.pop()
            else:
                break
        hull.append(k)
    out = []
    for i, j in zip(hull[:-1], hull[1:]):
        n = j - i
        radius = np.exp((logs[i] - logs[j]) / n)
        angles = 2 * np.pi * np.arange(n) / n + 2 * np.pi * i / d + 0.4
        out.append(radius * np.exp(1j * angles))
    return np.concatenate(out)


def _aberth(c, max_iter):
    d = len(c) - 1
    if d == 1:
        return np.array([-c[0] / c[1]])
    z = _initial_guesses(c)
    scale = np.max(np.abs(c))
    tiny = 4 * np.finfo(float).eps
    for _ in range(max_iter):
        with np.errstate(over="ignore", invalid="ignore"):
            p, dp = _horner_with_derivative(c, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ratio = p / dp
            w = ratio / (1.0 - ratio * s)
        # exact hits (p == 0) or stalled derivative
        w = np.where(p == 0, 0.0, w)
        w = np.where(np.isfinite(w), w, 1e-3 * scale)
        z = z - w
        if np.all(np.abs(w) <= tiny * np.maximum(np.abs(z), 1.0)):
            break
    return z


def _merge_clusters(z, radius):
    z = list(z)
    groups = []
    used = [False] * len(z)
    for i in range(len(z)):
        if used[i]:
            continue
        members = [i]
        used[i] = True
        grew = True
        while grew:
            grew = False
            for j in range(len(z)):
                if not used[j] and any(abs(z[j] - z[k]) <= radius for k in members):
                    members.append(j)
                    used[j] = True
                    grew = True
        groups.append((complex(np.mean([z[k] for k in members])), len(members)))
    return groups


def _polish_multiple(c, r, m, steps=5, radius=CLUSTER_RADIUS):
    """Newton on the (m-1)-th derivative, where a root of multiplicity m is
    simple; the cluster mean alone is only accurate to about radius^2."""
    d = np.polynomial.polynomial.polyder(c, m - 1)
    for _ in range(steps):
        p, dp = _horner_with_derivative(d, np.array([r]))
        if dp[0] == 0:
            break
        step = p[0] / dp[0]
        if abs(step) > radius:
            break
        r = r - step
        if abs(step) <= 1e-16 * max(1.0, abs(r)):
            break
    return complex(r)


def polynomial_roots(coeffs, eps_b=EPS_BOUNDARY, eps_root=EPS_ROOT,
                     max_iter=MAX_ITER, cluster_radius=CLUSTER_RADIUS):
    """All roots of the polynomial with ascending coefficients ``coeffs``.

    Exact zero roots (vanishing low-order coefficients) are split off before
    iterating. Approximations closer than ``cluster_radius`` are merged into a
    single root with multiplicity. Raises RootConvergenceError when a root
    fails the residual test ``|p(r)| <= eps_root * max|a| * max(1, |r|)^d``.
    """
    c = strip_trailing(coeffs)
    degree = len(c) - 1
    if degree < 1:
        raise ValueError("polynomial_roots needs degree >= 1")
    leading = complex(c[-1])

    n_zero = 0
    while n_zero < degree and c[n_zero] == 0:
        n_zero += 1
    reduced = c[n_zero:]

    found = []
    if len(reduced) > 1:
        found = list(_aberth(reduced, max_iter))
    worst = float(np.max(_relative_residual(c, found))) if found else 0.0
    if found and worst > eps_root:
        raise RootConvergenceError("Aberth iteration did not reach the residual tolerance",
                                   worst, roots=found)

    groups = [(_polish_multiple(reduced, r, m, radius=cluster_radius) if m > 1 else r, m)
              for r, m in _merge_clusters(found, cluster_radius)]
    if n_zero:
        groups.append((0j, n_zero))
    groups.sort(key=lambda g: (abs(g[0]), np.angle(g[0])))
    roots = tuple(Root(loc, mult, classify_point(loc, eps_b)) for loc, mult in groups)
    return RootSet(roots=roots, degree=degree, leading=leading, max_residual=worst)


def poly_from_roots(roots, leading=1.0):
    """Ascending coefficients of ``leading * prod(z - r)``."""
    out = np.array([leading], dtype=complex)
    for r in roots:
        out = np.convolve(out, np.array([-r, 1.0], dtype=complex))
    return out
