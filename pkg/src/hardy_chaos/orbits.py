"""Finite-horizon orbit diagnostics for the Li-Yorke conditions
limsup ||A^n x|| > 0 and liminf ||A^n x|| = 0."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chaos import Verdict, classify_chaos
from .errors import PreconditionError
from .hardy import HardyVec
from .operators import adjoint_mult_operator

OVERFLOW = 1e300
WINDOW = 0.5


@dataclass(frozen=True)
class OrbitStats:
    trace: np.ndarray  # ||A^n x|| for n = 0..len-1, float64
    limsup_est: float
    liminf_est: float
    window: tuple  # (first n, last n) used by the estimators
    horizon: int
    overflow: bool

    @property
    def ratio(self):
        if self.liminf_est == 0:
            return math.inf if self.limsup_est > 0 else 0.0
        return self.limsup_est / self.liminf_est

    def summary(self):
        return {"horizon": self.horizon, "window": list(self.window),
                "limsup_est": self.limsup_est, "liminf_est": self.liminf_est,
                "overflow": self.overflow, "steps": int(self.trace.size - 1)}


def orbit_stats(A, x, horizon, window=WINDOW, overflow=OVERFLOW):
    """Iterate x, Ax, ..., A^H x in extended precision and summarize the norm
    trace over the final ``window`` fraction of the horizon.

    Iteration stops early, flagging ``overflow``, once a norm exceeds
    ``overflow``; the estimators then use the final window of what was computed.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    coeffs = x.coeffs if isinstance(x, HardyVec) else np.asarray(x)
    v = coeffs.astype(np.clongdouble)
    norms = [_norm(v)]
    if norms[0] == 0:
        raise ValueError("starting vector must be nonzero")
    hit = False
    for _ in range(horizon):
        v = A.apply(v)
        nv = _norm(v)
        norms.append(nv)
        if nv > overflow:
            hit = True
            break
    trace = np.array([float(t) for t in norms])
    last = trace.size - 1
    start = last - int(math.floor(last * window))
    seg = trace[start:]
    return OrbitStats(trace, float(seg.max()), float(seg.min()), (start, last), horizon, hit)


def _norm(v):
    return np.sqrt(np.sum(v.real * v.real + v.imag * v.imag))


def block_witness(a, N):
    """x = sum_j |a|^(-m_j) e_{m_j}, m_j = 2^j < N.

    Under (aT) the block at m_j reaches e_0 at step m_j with norm 1, and just
    after it the orbit drops to about |a|^(1 - (m_{j+1} - m_j)).
    """
    c = np.zeros(N, dtype=np.clongdouble)
    base = np.longdouble(abs(a))
    m = 1
    while m < N:
        c[m] = base ** (-m)
        m *= 2
    return HardyVec(c)


def is_scaled_shift(phi):
    return phi.is_polynomial and len(phi.num) == 2 and phi.num[0] == 0


def liyorke_witness(phi, N, horizon, restarts=200, seed=0, window=WINDOW, classify=True):
    """Search a starting vector whose orbit under M_phi^* has large
    limsup/liminf over the final window.

    For phi = a z with |a| > 1 the deterministic block vector is used;
    otherwise the best of ``restarts`` random sparse block vectors.
    Returns (x, stats).
    """
    if classify and classify_chaos(phi).verdict != Verdict.CHAOTIC:
        raise PreconditionError("Li-Yorke witness requested for a symbol that is not chaotic")
    A = adjoint_mult_operator(phi, N)
    if is_scaled_shift(phi) and abs(phi.num[1] / phi.den[0]) > 1:
        x = block_witness(phi.num[1] / phi.den[0], N)
        return x, orbit_stats(A, x, horizon, window)
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        x = _random_block_vector(rng, N)
        st = orbit_stats(A, x, horizon, window)
        if best is None or _score(st) > _score(best[1]):
            best = (x, st)
    return best


def _score(st):
    if st.limsup_est <= 0:
        return -math.inf
    if st.liminf_est == 0:
        return math.inf
    return math.log(st.limsup_est) - math.log(st.liminf_est)


def _random_block_vector(rng, N):
    c = np.zeros(N, dtype=complex)
    for _ in range(int(rng.integers(1, 5))):
        start = int(rng.integers(0, N))
        length = int(rng.integers(1, 9))
        scale = 10.0 ** (-rng.uniform(0, 12))
        block = rng.normal(size=length) + 1j * rng.normal(size=length)
        c[start:start + length] += scale * block[: N - start]
    if not np.any(c):
        c[0] = 1.0
    return HardyVec(c)
