"""One-sided (Hestenes) Jacobi singular values for complex matrices.

Column pairs are rotated in round-robin order so that each round touches
disjoint pairs and can be applied to all of them at once.
"""

from __future__ import annotations

import numpy as np

from .errors import SVDConvergenceError

JACOBI_TOL = 1e-12
MAX_SWEEPS = 60


def _round_robin(n):
    """n-1 rounds of n/2 disjoint pairs covering every pair once (n even)."""
    idx = list(range(n))
    rounds = []
    for _ in range(n - 1):
        p = np.array(idx[: n // 2])
        q = np.array(idx[n // 2:][::-1])
        rounds.append((p, q))
        idx = [idx[0]] + [idx[-1]] + idx[1:-1]
    return rounds


def _updated_norms(H, idx, new, old):
    # the update cancels when a column collapses; recompute those directly
    lost = new < 1e-8 * old
    if lost.any():
        rows = H[idx[lost]]
        new = new.copy()
        new[lost] = np.einsum("ij,ij->i", rows.conj(), rows).real
    return new


def jacobi_singular_values(A, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS, precondition=True):
    """Singular values of ``A`` in descending order.

    With ``precondition`` the iteration runs on R^H from a Householder QR of
    ``A``, which has the same singular values and converges in fewer sweeps.
    Returns (singular_values, sweeps).
    """
    G = np.array(A, dtype=complex)
    if G.ndim != 2:
        raise ValueError("expected a matrix")
    if G.shape[0] < G.shape[1]:
        G = G.conj().T
    if precondition:
        R = np.linalg.qr(G, mode="r")
        G = R.conj().T.copy()
    # rows of H are the columns being orthogonalized (contiguous gathers)
    H = np.ascontiguousarray(G.T)
    n = H.shape[0]
    if n == 1:
        return np.array([np.linalg.norm(H[0])]), 0
    if n % 2:
        H = np.vstack([H, np.zeros((1, H.shape[1]), dtype=complex)])
    rounds = _round_robin(H.shape[0])

    off = np.inf
    for sweep in range(1, max_sweeps + 1):
        rotated = 0
        off = 0.0
        norms = np.einsum("ij,ij->i", H.conj(), H).real
        for p, q in rounds:
            ap = H[p]
            aq = H[q]
            alpha = norms[p]
            beta = norms[q]
            gamma = np.einsum("ij,ij->i", ap.conj(), aq)
            g = np.abs(gamma)
            denom = np.sqrt(alpha * beta)
            with np.errstate(divide="ignore", invalid="ignore"):
                rel = np.where(denom > 0, g / denom, 0.0)
            off = max(off, float(rel.max(initial=0.0)))
            act = rel > tol
            if not act.any():
                continue
            rotated += int(act.sum())
            if not act.all():
                p, q = p[act], q[act]
                ap, aq = ap[act], aq[act]
                alpha, beta, gamma, g = alpha[act], beta[act], gamma[act], g[act]
            phase = gamma / g
            zeta = (beta - alpha) / (2 * g)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1 + zeta * zeta))
            c = 1 / np.sqrt(1 + t * t)
            s = c * t
            # rotate (ap, aq * conj(phase)) by the real Jacobi angle
            aqr = aq * phase.conj()[:, None]
            H[p] = c[:, None] * ap - s[:, None] * aqr
            H[q] = (s[:, None] * ap + c[:, None] * aqr) * phase[:, None]
            norms[p] = _updated_norms(H, p, alpha - t * g, alpha)
            norms[q] = _updated_norms(H, q, beta + t * g, beta)
        if rotated == 0:
            sv = np.sort(np.linalg.norm(H, axis=1))[::-1][:n]
            return sv, sweep
    raise SVDConvergenceError(max_sweeps, off)


def numerical_rank(A, rank_tol=1e-8, **kw):
    sv, _ = jacobi_singular_values(A, **kw)
    return int(np.sum(sv > rank_tol * sv[0])) if sv[0] > 0 else 0
