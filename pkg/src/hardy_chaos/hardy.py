"""Truncated Hardy-space vectors in the Taylor-coefficient basis."""

from __future__ import annotations

import csv
import io
import json

import numpy as np

DEFAULT_N = 256
# kernels are only built strictly inside this radius
KERNEL_RADIUS = 1 - 1e-6


class HardyVec:
    """g(z) = sum_n coeffs[n] z^n truncated at order N.

    ``coeffs`` may be complex128 or clongdouble; the latter keeps orbit
    computations with huge dynamic range representable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, copy=True)
        if c.dtype not in (np.complex128, np.clongdouble):
            c = c.astype(complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("HardyVec coefficients must be a non-empty 1-d sequence")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("HardyVec is immutable")

    @property
    def N(self):
        return self.coeffs.size

    @classmethod
    def basis(cls, k, N=DEFAULT_N):
        c = np.zeros(N, dtype=complex)
        c[k] = 1.0
        return cls(c)

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def __add__(self, other):
        _check_dims(self, other)
        return HardyVec(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_dims(self, other)
        return HardyVec(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return HardyVec(self.coeffs * scalar)

    __rmul__ = __mul__

    def __len__(self):
        return self.N

    def __repr__(self):
        head = ", ".join(f"{complex(c):.4g}" for c in self.coeffs[:4])
        more = ", ..." if self.N > 4 else ""
        return f"HardyVec(N={self.N}, [{head}{more}])"

    def to_json(self):
        return json.dumps([[float(c.real), float(c.imag)] for c in self.coeffs])

    @classmethod
    def from_json(cls, text):
        return cls([complex(re, im) for re, im in json.loads(text)])

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "re", "im"])
        for n, c in enumerate(self.coeffs):
            w.writerow([n, repr(float(c.real)), repr(float(c.imag))])
        return buf.getvalue()


def _check_dims(g, f):
    if g.N != f.N:
        raise ValueError(f"truncation orders differ: {g.N} != {f.N}")


def inner(g, f):
    """<g, f> = sum g_n conj(f_n); conjugate-linear in ``f``."""
    _check_dims(g, f)
    return complex(np.vdot(f.coeffs, g.coeffs))


def _check_z(z, radius=KERNEL_RADIUS):
    if abs(z) >= 1:
        raise ValueError(f"|z| = {abs(z)} >= 1: the reproducing kernel is not in H^2")
    if abs(z) > radius:
        raise ValueError(f"|z| = {abs(z)} exceeds the kernel radius {radius}; truncation "
                         "error would dominate")


def reproducing_kernel(z, N=DEFAULT_N):
    """f_z with coefficients conj(z)^n, so that <g, f_z> = g(z)."""
    _check_z(z)
    return HardyVec(np.conj(complex(z)) ** np.arange(N))


def kernel_norm_sq(z, N):
    """Closed-form ||f_z||^2 at truncation N."""
    r2 = abs(z) ** 2
    if r2 == 0:
        return 1.0
    return (1 - r2 ** N) / (1 - r2)


def point_eval(g, z):
    """g(z) via the reproducing kernel."""
    _check_z(z)
    return inner(g, reproducing_kernel(z, g.N))


def point_eval_horner(g, z):
    """g(z) via Horner's rule on the coefficients."""
    _check_z(z)
    acc = 0j
    for a in g.coeffs[::-1]:
        acc = acc * z + complex(a)
    return acc
