"""Truncated multiplication, adjoint-multiplication and backward-shift operators.

Convention: chaos questions are asked about the adjoint multiplier M_phi^*.
phi(T) for the backward shift T equals M_{phi~}^* where phi~ carries the
conjugated coefficients of phi (see Symbol.conjugate_coefficients).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .hardy import DEFAULT_N, HardyVec
from .svd import jacobi_singular_values

RANK_TOL = 1e-8
# dense apply beats shifted sums once the band is this wide
_BAND_LIMIT = 64


class Provenance(str, Enum):
    MULT = "MULT"
    ADJOINT_MULT = "ADJOINT_MULT"
    SHIFT = "SHIFT"
    PHI_OF_SHIFT = "PHI_OF_SHIFT"
    GENERIC = "GENERIC"


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """An N x N operator on truncated H^2.

    Toeplitz-structured operators keep their band ``band`` (first column for
    lower-triangular, first row for upper-triangular) and only materialize
    the dense matrix on request.
    """

    N: int
    provenance: Provenance
    label: str = ""
    band: np.ndarray | None = None
    upper: bool = False
    dense: np.ndarray | None = None
    edge: int = 0  # rows/cols at the truncation edge not covered by identities

    @property
    def matrix(self):
        if self.dense is not None:
            return self.dense
        m = toeplitz_triangular(self.band, self.N, upper=self.upper)
        m.setflags(write=False)
        object.__setattr__(self, "dense", m)
        return m

    @property
    def is_banded(self):
        if self.band is None:
            return False
        nz = np.flatnonzero(self.band)
        return nz.size == 0 or int(nz[-1]) < _BAND_LIMIT

    def apply(self, x):
        """Matrix-vector product; O(N d) for banded Toeplitz operators.
        Preserves clongdouble input precision."""
        v = x.coeffs if isinstance(x, HardyVec) else np.asarray(x)
        if v.shape != (self.N,):
            raise ValueError(f"vector of length {v.shape} for operator of order {self.N}")
        if self.is_banded:
            out = _banded_apply(self.band, v, self.upper)
        else:
            out = self.matrix.astype(v.dtype if v.dtype == np.clongdouble else complex) @ v
        return HardyVec(out) if isinstance(x, HardyVec) else out

    def __matmul__(self, x):
        return self.apply(x)

    def __mul__(self, scalar):
        if self.band is not None:
            return TruncatedOperator(self.N, self.provenance, f"{scalar}*{self.label}",
                                     band=_ro(self.band * scalar), upper=self.upper, edge=self.edge)
        return TruncatedOperator(self.N, Provenance.GENERIC, f"{scalar}*{self.label}",
                                 dense=_ro(self.matrix * scalar), edge=self.edge)

    __rmul__ = __mul__

    def __repr__(self):
        return f"TruncatedOperator(N={self.N}, {self.provenance.value}, {self.label!r})"

    # export
    def header(self):
        return {"N": self.N, "provenance": self.provenance.value, "label": self.label,
                "dtype": "float64-pairs", "order": "column-major"}

    def to_bytes(self):
        """JSON header line, then the matrix in column-major order as
        little-endian (re, im) float64 pairs."""
        head = json.dumps(self.header()).encode() + b"\n"
        m = np.asarray(self.matrix, dtype="<c16")
        return head + m.tobytes(order="F")

    @staticmethod
    def from_bytes(data):
        head, _, body = data.partition(b"\n")
        h = json.loads(head)
        n = h["N"]
        m = np.frombuffer(body, dtype="<c16").reshape((n, n), order="F").astype(complex)
        return TruncatedOperator(n, Provenance(h["provenance"]), h.get("label", ""),
                                 dense=_ro(m))


def _ro(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


def toeplitz_triangular(band, N, upper=False):
    """Dense lower (or upper) triangular Toeplitz matrix from its band."""
    m = np.zeros((N, N), dtype=complex)
    for k in np.flatnonzero(band[:N]):
        idx = np.arange(N - k)
        if upper:
            m[idx, idx + k] = band[k]
        else:
            m[idx + k, idx] = band[k]
    return m


def _banded_apply(band, v, upper):
    N = v.size
    out = np.zeros_like(v)
    b = band.astype(v.dtype)
    for k in np.flatnonzero(band):
        k = int(k)
        if k >= N:
            break
        if upper:
            out[: N - k] += b[k] * v[k:]
        else:
            out[k:] += b[k] * v[: N - k]
    return out


def _is_unit_shift(band):
    return len(band) > 1 and band[1] == 1 and np.count_nonzero(band) == 1


def _symbol_edge(phi):
    return phi.degree if phi.is_polynomial else 0


def mult_operator(phi, N=DEFAULT_N):
    """M_phi: lower-triangular Toeplitz with the Taylor coefficients of phi."""
    band = _ro(phi.taylor(N))
    return TruncatedOperator(N, Provenance.MULT, f"M[{phi!r}]", band=band,
                             edge=_symbol_edge(phi))


def adjoint_mult_operator(phi, N=DEFAULT_N):
    return adjoint(mult_operator(phi, N))


def shift_operator(N=DEFAULT_N):
    """Backward shift T: entry (n, n+1) = 1."""
    band = np.zeros(N, dtype=complex)
    if N > 1:
        band[1] = 1.0
    return TruncatedOperator(N, Provenance.SHIFT, "T", band=_ro(band), upper=True, edge=1)


def adjoint(A):
    """Conjugate transpose."""
    if A.band is not None:
        if A.provenance == Provenance.MULT and _is_unit_shift(A.band):
            prov = Provenance.SHIFT
        else:
            prov = {Provenance.MULT: Provenance.ADJOINT_MULT,
                    Provenance.ADJOINT_MULT: Provenance.MULT,
                    Provenance.SHIFT: Provenance.MULT}.get(A.provenance, Provenance.GENERIC)
        return TruncatedOperator(A.N, prov, f"({A.label})*", band=_ro(np.conj(A.band)),
                                 upper=not A.upper, edge=A.edge)
    return TruncatedOperator(A.N, Provenance.GENERIC, f"({A.label})*",
                             dense=_ro(A.matrix.conj().T), edge=A.edge)


def phi_of_shift(phi, N=DEFAULT_N):
    """phi(T) by functional calculus on the truncated shift.

    P(T) is summed from powers of T; a rational phi = P/Q is completed by
    solving against Q(T). Triangular truncation makes this exact on the
    polynomial algebra, so it agrees with the adjoint multiplier of the
    coefficient-conjugated symbol; the Taylor-series route is kept separate
    so the two can be compared.
    """
    T = shift_operator(N).matrix
    P = _poly_of_matrix(phi.num, T)
    if len(phi.den) > 1:
        Q = _poly_of_matrix(phi.den, T)
        M = np.linalg.solve(Q.T, P.T).T  # P Q^{-1}
    else:
        M = P / phi.den[0]
    return TruncatedOperator(N, Provenance.PHI_OF_SHIFT, f"phi(T)[{phi!r}]", dense=_ro(M),
                             edge=_symbol_edge(phi))


def _poly_of_matrix(coeffs, T):
    N = T.shape[0]
    out = np.zeros((N, N), dtype=complex)
    power = np.eye(N, dtype=complex)
    for k, a in enumerate(coeffs):
        if k:
            power = power @ T
        if a != 0:
            out += a * power
    return out


def phi_of_shift_discrepancy(phi, N=DEFAULT_N):
    """Operator 2-norm of phi(T) - M_{phi~}^* on the leading (N - d) block."""
    A = phi_of_shift(phi, N).matrix
    B = adjoint_mult_operator(phi.conjugate_coefficients(), N).matrix
    d = _symbol_edge(phi)
    k = N - d
    return float(np.linalg.norm(A[:k, :k] - B[:k, :k], 2))


def singular_values(A, lam=0.0, precondition=True):
    M = np.array(A.matrix if isinstance(A, TruncatedOperator) else A, dtype=complex)
    M = M - lam * np.eye(M.shape[0])
    sv, _ = jacobi_singular_values(M, precondition=precondition)
    return sv


def kernel_dimension(A, lam=0.0, rank_tol=RANK_TOL):
    """Count of singular values of A - lam I below rank_tol * sigma_max."""
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    sv = singular_values(A, lam)
    if sv[0] == 0:
        return len(sv)
    return int(np.sum(sv < rank_tol * sv[0]))


def surjectivity_residual(A, lam, K=32, edge=None):
    """Worst least-squares residual of (A - lam) x = e_k over k < K, measured
    on the leading N - edge rows."""
    N = A.N
    if K > N // 2:
        raise ValueError("probe count K must be <= N/2")
    edge = A.edge if edge is None else edge
    rows = N - edge
    M = (np.array(A.matrix) - lam * np.eye(N))[:rows]
    E = np.zeros((rows, K), dtype=complex)
    E[np.arange(K), np.arange(K)] = 1.0
    X, *_ = np.linalg.lstsq(M, E, rcond=None)
    R = M @ X - E
    return float(np.max(np.linalg.norm(R, axis=0)))


def spectrum_image(phi, M=256):
    """phi at M uniform points of the circle: the boundary of cl phi(D)."""
    if M < 16:
        raise ValueError("need at least 16 boundary samples")
    theta = 2 * np.pi * np.arange(M) / M
    return phi.eval(np.exp(1j * theta))


def winding_number(curve, point):
    """Winding number of a closed sampled curve around ``point``."""
    d = np.asarray(curve) - point
    if np.any(d == 0):
        return None
    ang = np.angle(np.roll(d, -1) / d)
    return int(round(ang.sum() / (2 * np.pi)))


def curve_distance(curve, point):
    return float(np.min(np.abs(np.asarray(curve) - point)))
