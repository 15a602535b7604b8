"""Rational symbols holomorphic on a neighbourhood of the closed unit disk."""

from __future__ import annotations

import json
from enum import Enum

import numpy as np

from .errors import NotInvertibleError, SymbolDomainError, ZeroPolynomialDivision
from .roots import EPS_BOUNDARY, Location, horner, polynomial_roots, strip_trailing

# relative size below which a derivative coefficient counts as zero
_CONST_TOL = 1e-14


def _as_coeffs(c):
    return strip_trailing(np.atleast_1d(np.asarray(c, dtype=complex)))


def _freeze(a):
    a.setflags(write=False)
    return a


class Symbol:
    """phi(z) = numerator(z) / denominator(z), coefficients in ascending powers.

    The denominator may not vanish on ``|z| <= 1 + eps_b``. Instances are
    immutable.
    """

    __slots__ = ("num", "den", "_roots")

    def __init__(self, num, den=(1.0,), eps_b=EPS_BOUNDARY, check=True):
        num = _as_coeffs(num)
        den = _as_coeffs(den)
        if not np.any(den):
            raise ZeroPolynomialDivision("division by the zero polynomial")
        if check and len(den) > 1:
            for r in polynomial_roots(den, eps_b=eps_b):
                if abs(r.location) <= 1.0 + eps_b:
                    raise SymbolDomainError(
                        f"denominator vanishes at z={_fmt(r.location)} in the closed unit disk; "
                        "symbol is not in H-infinity")
        object.__setattr__(self, "num", _freeze(num))
        object.__setattr__(self, "den", _freeze(den))
        object.__setattr__(self, "_roots", None)

    def __setattr__(self, name, value):
        raise AttributeError("Symbol is immutable")

    # construction helpers
    @classmethod
    def polynomial(cls, coeffs):
        return cls(coeffs)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def affine(cls, a, b=1.0):
        """a + b*z"""
        return cls([a, b])

    @property
    def is_polynomial(self):
        return len(self.den) == 1

    @property
    def degree(self):
        """Numerator degree for polynomials; max(deg num, deg den) otherwise."""
        return max(len(self.num), len(self.den)) - 1

    @property
    def is_affine(self):
        return self.is_polynomial and len(self.num) == 2

    @property
    def is_zero(self):
        return not np.any(self.num)

    @property
    def is_constant(self):
        """True iff the derivative vanishes identically."""
        w = derivative_numerator(self.num, self.den)
        scale = max(np.max(np.abs(self.num)), 1e-300) * np.max(np.abs(self.den))
        return bool(np.all(np.abs(w) <= _CONST_TOL * scale))

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        """Horner evaluation of numerator over denominator."""
        out = horner(self.num, z) / horner(self.den, z)
        return complex(out) if np.ndim(out) == 0 else out

    def numerator_roots(self, eps_b=EPS_BOUNDARY):
        if len(self.num) < 2:
            return None
        if eps_b == EPS_BOUNDARY:
            if self._roots is None:
                object.__setattr__(self, "_roots", polynomial_roots(self.num))
            return self._roots
        return polynomial_roots(self.num, eps_b=eps_b)

    def taylor(self, n):
        """First ``n`` Taylor coefficients at the origin."""
        return taylor_coefficients(self.num, self.den, n)

    def conjugate_coefficients(self):
        """z -> conj(phi(conj z)); the symbol whose adjoint multiplier equals phi(T)."""
        return Symbol(np.conj(self.num), np.conj(self.den), check=False)

    # algebra
    def __add__(self, other):
        other = _coerce(other)
        if len(self.den) == 1 and len(other.den) == 1 and self.den[0] == other.den[0]:
            return Symbol(_padd(self.num, other.num), self.den, check=False)
        return Symbol(_padd(np.convolve(self.num, other.den), np.convolve(other.num, self.den)),
                      np.convolve(self.den, other.den), check=False)

    __radd__ = __add__

    def __neg__(self):
        return Symbol(-self.num, self.den, check=False)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return Symbol(np.convolve(self.num, other.num), np.convolve(self.den, other.den),
                      check=False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero:
            raise ZeroPolynomialDivision("division by the zero polynomial")
        return Symbol(np.convolve(self.num, other.den), np.convolve(self.den, other.num))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k):
        if int(k) != k or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = Symbol([1.0])
        for _ in range(int(k)):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return (np.array_equal(self.num, other.num) and np.array_equal(self.den, other.den))

    def __hash__(self):
        return hash((self.num.tobytes(), self.den.tobytes()))

    def allclose(self, other, atol=1e-12):
        return (len(self.num) == len(other.num) and len(self.den) == len(other.den)
                and np.allclose(self.num, other.num, atol=atol)
                and np.allclose(self.den, other.den, atol=atol))

    def __repr__(self):
        num = [_fmt(c) for c in self.num]
        den = [_fmt(c) for c in self.den]
        return f"Symbol(num=[{', '.join(num)}], den=[{', '.join(den)}])"

    # serialization
    def to_dict(self):
        return {"num": [[float(c.real), float(c.imag)] for c in self.num],
                "den": [[float(c.real), float(c.imag)] for c in self.den]}

    @classmethod
    def from_dict(cls, d):
        return cls([complex(re, im) for re, im in d["num"]],
                   [complex(re, im) for re, im in d["den"]])

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _coerce(x):
    if isinstance(x, Symbol):
        return x
    return Symbol([complex(x)])


def _padd(a, b):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=complex)
    out[:len(a)] += a
    out[:len(b)] += b
    return out


def _fmt(c):
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    return f"({c.real!r}{c.imag:+}j)"


def derivative_numerator(num, den):
    """Numerator of (num/den)' = num' den - num den'."""
    dn = np.polynomial.polynomial.polyder(num) if len(num) > 1 else np.zeros(1, complex)
    dd = np.polynomial.polynomial.polyder(den) if len(den) > 1 else np.zeros(1, complex)
    return _padd(np.convolve(dn, den), -np.convolve(num, dd))


def taylor_coefficients(num, den, n):
    """Power-series coefficients of num/den up to order n-1 (den[0] != 0)."""
    num = np.asarray(num, dtype=complex)
    den = np.asarray(den, dtype=complex)
    out = np.zeros(n, dtype=complex)
    m = min(n, len(num))
    out[:m] = num[:m]
    if len(den) == 1:
        return out / den[0]
    d0 = den[0]
    tail = den[1:]
    for k in range(n):
        j = min(k, len(tail))
        if j:
            out[k] -= np.dot(tail[:j], out[k - 1::-1][:j])
        out[k] /= d0
    return out


class OuterVerdict(str, Enum):
    OUTER = "OUTER"
    NOT_OUTER = "NOT_OUTER"
    OUTER_NOT_INVERTIBLE = "OUTER_NOT_INVERTIBLE"


def is_outer_rational(h, eps_b=EPS_BOUNDARY):
    """Outerness of a rational symbol, decided by the zeros of its numerator.

    No zeros in the open disk means outer; zeros on the circle make it outer
    but not invertible in H-infinity.
    """
    if h.is_zero:
        return OuterVerdict.NOT_OUTER
    roots = h.numerator_roots(eps_b)
    if roots is None:
        return OuterVerdict.OUTER
    if roots.count(Location.INSIDE):
        return OuterVerdict.NOT_OUTER
    if roots.has_boundary:
        return OuterVerdict.OUTER_NOT_INVERTIBLE
    return OuterVerdict.OUTER


def invert_symbol(phi, eps_b=EPS_BOUNDARY):
    """1/phi, defined when the numerator has no zero on ``|z| <= 1 + eps_b``."""
    if phi.is_zero:
        raise NotInvertibleError("the zero symbol is not invertible")
    roots = phi.numerator_roots(eps_b)
    if roots is not None:
        for r in roots:
            if abs(r.location) <= 1.0 + eps_b:
                raise NotInvertibleError(
                    f"numerator vanishes at z={_fmt(r.location)} ({r.where.value}); "
                    "1/phi is not bounded on the disk", root=r.location)
    return Symbol(phi.den, phi.num, check=False)


def parse_symbol(text, eps_b=EPS_BOUNDARY):
    from .parser import parse_symbol as _parse
    return _parse(text, eps_b=eps_b)
