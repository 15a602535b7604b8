"""Shared random generators for tests."""

import numpy as np

from hardy_chaos import Symbol


def random_poly(rng, deg, box=1.0):
    c = rng.uniform(-box, box, deg + 1) + 1j * rng.uniform(-box, box, deg + 1)
    return c


def random_disk_point(rng, radius):
    r = radius * np.sqrt(rng.uniform())
    return r * np.exp(2j * np.pi * rng.uniform())


def random_symbol(rng, max_deg=4, box=2.0):
    deg = int(rng.integers(1, max_deg + 1))
    return Symbol(random_poly(rng, deg, box))


def dense_extrema(phi, n=1_000_000):
    z = np.exp(2j * np.pi * np.arange(n) / n)
    v = np.abs(np.polyval(phi.num[::-1], z) / np.polyval(phi.den[::-1], z))
    return float(v.min()), float(v.max())
