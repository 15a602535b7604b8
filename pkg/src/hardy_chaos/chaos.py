"""Chaos classification of adjoint multipliers M_phi^* on H^2.

For a Cowen-Douglas symbol phi, M_phi^* is Devaney chaotic, distributionally
chaotic, strongly mixing, Li-Yorke chaotic and hypercyclic exactly when
phi(D) meets the unit circle; by connectedness that happens iff
inf|phi| < 1 < sup|phi| over the disk. Cowen-Douglas membership is checked
through rooter decompositions phi - phi(z0) = p * h at sampled base points.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ConstantSymbolError, PreconditionError
from .extrema import CIRCLE_SAMPLES, ModulusExtrema, affine_extrema, modulus_extrema
from .hardy import DEFAULT_N, reproducing_kernel
from .operators import (RANK_TOL, adjoint_mult_operator, curve_distance, kernel_dimension,
                        spectrum_image, surjectivity_residual, winding_number)
from .parallel import parallel_map
from .roots import EPS_BOUNDARY, Location, horner, poly_from_roots, polynomial_roots, strip_trailing
from .symbols import OuterVerdict, Symbol, invert_symbol, is_outer_rational

EPS_DEC = 1e-7
CD_SAMPLES = 64
SAMPLE_RADIUS = 0.9
PROPERTIES = ("devaney", "distributional", "strong_mixing", "li_yorke", "hypercyclic")


class Tri(str, Enum):
    YES = "YES"
    NO = "NO"
    INDETERMINATE = "INDETERMINATE"


class Verdict(str, Enum):
    CHAOTIC = "CHAOTIC"
    NOT_CHAOTIC = "NOT_CHAOTIC"
    INDETERMINATE = "INDETERMINATE"


class CDVerdict(str, Enum):
    SUFFICIENT_CONFIRMED = "SUFFICIENT_CONFIRMED"
    NOT_CONFIRMED = "NOT_CONFIRMED"
    FAILS = "FAILS"


class RooterVerdict(str, Enum):
    OUTER = "OUTER"
    NOT_OUTER = "NOT_OUTER"
    OUTER_NOT_INVERTIBLE = "OUTER_NOT_INVERTIBLE"
    INDETERMINATE = "INDETERMINATE"


def sample_disk(n, seed=0, radius=SAMPLE_RADIUS):
    """Area-uniform pseudo-random points in |z| <= radius."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random(n))
    t = 2 * np.pi * rng.random(n)
    return r * np.exp(1j * t)


# circle intersection

def decide_intersection(inf_mod, sup_mod, circle_spread, eps_dec=EPS_DEC):
    """Three-way decision of phi(D) meeting the unit circle from modulus extrema.

    A symbol with |phi| == 1 on the whole circle (a unimodular multiple of a
    finite Blaschke product) maps D into the open disk, hence NO. Any other
    extremum within eps_dec of 1 is a tangency and stays INDETERMINATE.
    """
    if inf_mod < 1 - eps_dec and sup_mod > 1 + eps_dec:
        return Tri.YES
    if inf_mod > 1 + eps_dec or sup_mod < 1 - eps_dec:
        return Tri.NO
    if abs(sup_mod - 1) <= eps_dec and circle_spread <= eps_dec:
        return Tri.NO
    return Tri.INDETERMINATE


def _extrema(phi, circle_samples, eps_b):
    if phi.is_affine:
        a, b = phi.num
        lo, hi = affine_extrema(a, b)
        spread = 2 * min(abs(a), abs(b))
        circle_min = abs(abs(a) - abs(b))
        return ModulusExtrema(lo, hi, float("nan"), float(np.angle(a * np.conj(b))) % (2 * np.pi),
                              circle_min, spread)
    return modulus_extrema(phi, samples=circle_samples, eps_b=eps_b)


def circle_intersection(phi, eps_dec=EPS_DEC, circle_samples=CIRCLE_SAMPLES, eps_b=EPS_BOUNDARY):
    """YES / NO / INDETERMINATE for phi(D) meeting the unit circle.

    Constant symbols answer NO (the image is a single point of the open
    region or of the circle, and a constant is never Cowen-Douglas).
    """
    if phi.is_constant:
        return Tri.NO
    ext = _extrema(phi, circle_samples, eps_b)
    return decide_intersection(ext.inf_mod, ext.sup_mod, ext.circle_spread, eps_dec)


# rooter decomposition

@dataclass(frozen=True)
class RooterDecomposition:
    z0: complex
    p: np.ndarray  # monic, ascending coefficients
    h: Symbol
    m: int
    verdict: RooterVerdict
    reconstruction_error: float

    def to_dict(self):
        return {"z0": _c(self.z0), "p": [_c(c) for c in self.p], "h": self.h.to_dict(),
                "m": self.m, "verdict": self.verdict.value,
                "reconstruction_error": self.reconstruction_error}


def shifted_numerator(phi, c):
    """Numerator of phi - c, with cancelled leading terms removed."""
    q = np.zeros(max(len(phi.num), len(phi.den)), dtype=complex)
    q[:len(phi.num)] += phi.num
    q[:len(phi.den)] -= c * phi.den
    return strip_trailing(q, rel_tol=1e-14)


def rooter_decomposition(phi, z0, eps_b=EPS_BOUNDARY, check_points=64, seed=0):
    """phi(z) - phi(z0) = p(z) h(z) with p monic over the zeros inside D.

    The rooter h keeps the remaining zeros and the denominator; its verdict
    is its outerness, or INDETERMINATE when a zero sits in the boundary band.
    """
    if abs(z0) >= 1:
        raise ValueError("base point must lie in the open unit disk")
    if phi.is_constant:
        raise ConstantSymbolError("constant symbols have no rooter decomposition")
    c = phi.eval(z0)
    q = shifted_numerator(phi, c)
    if len(q) < 2:
        raise ConstantSymbolError("phi - phi(z0) is constant")
    roots = polynomial_roots(q, eps_b=eps_b)
    if roots.count(Location.BOUNDARY) == roots.degree:
        raise PreconditionError("all roots lie in the boundary band; cannot partition")
    inside = roots.expanded(Location.INSIDE)
    rest = roots.expanded(Location.BOUNDARY) + roots.expanded(Location.OUTSIDE)
    p = poly_from_roots(inside)
    h = Symbol(poly_from_roots(rest, roots.leading), phi.den, check=False)
    if roots.has_boundary:
        verdict = RooterVerdict.INDETERMINATE
    else:
        verdict = RooterVerdict(is_outer_rational(h, eps_b).value)
    pts = sample_disk(check_points, seed=seed, radius=0.95)
    lhs = phi.eval(pts) - c
    rhs = horner(p, pts) * h.eval(pts)
    scale = max(1.0, float(np.max(np.abs(lhs))))
    err = float(np.max(np.abs(lhs - rhs)) / scale)
    return RooterDecomposition(complex(z0), p, h, len(inside), verdict, err)


# Cowen-Douglas sufficiency

@dataclass(frozen=True)
class CDResult:
    verdict: CDVerdict
    m_profile: dict
    rooter_verdicts: dict
    notes: tuple = ()

    def __iter__(self):
        return iter((self.verdict, self.m_profile))

    def to_dict(self):
        return {"verdict": self.verdict.value,
                "m_profile": {str(k): v for k, v in self.m_profile.items()},
                "rooter_verdicts": dict(self.rooter_verdicts),
                "notes": list(self.notes)}


_COR_NOTE = ("polynomial symbol: every non-constant polynomial is claimed Cowen-Douglas; "
             "compare with the sampled m-profile")


def is_cowen_douglas_sufficient(phi, samples=CD_SAMPLES, seed=0, eps_b=EPS_BOUNDARY):
    """Sampled check of the sufficient condition: constant rooter multiplicity m
    and outer rooter functions at every sampled base point."""
    if phi.is_constant:
        raise ConstantSymbolError("a constant symbol is never a Cowen-Douglas function")
    notes = []
    if phi.is_affine:
        # p = z - z0, h = slope at every base point
        notes.append("affine symbol: rooter is the constant slope, m = 1 everywhere")
        notes.append(_COR_NOTE)
        return CDResult(CDVerdict.SUFFICIENT_CONFIRMED, {1: samples},
                        {RooterVerdict.OUTER.value: samples}, tuple(notes))
    ms = Counter()
    verdicts = Counter()
    for z0 in sample_disk(samples, seed=seed):
        dec = rooter_decomposition(phi, z0, eps_b=eps_b)
        ms[dec.m] += 1
        verdicts[dec.verdict.value] += 1
    if phi.is_polynomial:
        notes.append(_COR_NOTE)
    if verdicts[RooterVerdict.NOT_OUTER.value]:
        verdict = CDVerdict.FAILS
    elif len(ms) > 1 or verdicts[RooterVerdict.INDETERMINATE.value]:
        verdict = CDVerdict.NOT_CONFIRMED
        if len(ms) > 1:
            notes.append("rooter multiplicity varies over the samples: not m-folder")
    else:
        verdict = CDVerdict.SUFFICIENT_CONFIRMED
    return CDResult(verdict, dict(sorted(ms.items())), dict(sorted(verdicts.items())), tuple(notes))


# classification

@dataclass(frozen=True)
class ChaosReport:
    symbol: Symbol
    intersects_circle: Tri
    inf_mod: float
    sup_mod: float
    cowen_douglas: CDVerdict
    m_profile: dict
    verdicts: dict
    provenance: dict
    evidence: dict = field(default_factory=dict)

    @property
    def decided(self):
        return all(v != Verdict.INDETERMINATE for v in self.verdicts.values())

    @property
    def verdict(self):
        """The common verdict when all five agree, else INDETERMINATE."""
        vals = set(self.verdicts.values())
        return vals.pop() if len(vals) == 1 else Verdict.INDETERMINATE

    def to_dict(self):
        return {
            "schema": "hardy-chaos/chaos-report/1",
            "symbol": self.symbol.to_dict(),
            "intersects_circle": self.intersects_circle.value,
            "inf_mod": self.inf_mod,
            "sup_mod": self.sup_mod,
            "cowen_douglas": self.cowen_douglas.value,
            "m_profile": {str(k): v for k, v in self.m_profile.items()},
            "verdicts": {k: v.value for k, v in self.verdicts.items()},
            "provenance": dict(self.provenance),
            "evidence": self.evidence,
        }


def _verdicts_from(tri):
    v = {Tri.YES: Verdict.CHAOTIC, Tri.NO: Verdict.NOT_CHAOTIC,
         Tri.INDETERMINATE: Verdict.INDETERMINATE}[tri]
    return {k: v for k in PROPERTIES}


def classify_chaos(phi, samples=CD_SAMPLES, seed=0, eps_dec=EPS_DEC,
                   circle_samples=CIRCLE_SAMPLES, eps_b=EPS_BOUNDARY):
    """Full ChaosReport for M_phi^*."""
    warnings = []
    if phi.is_constant:
        c = abs(phi.eval(0.0)) if not phi.is_zero else 0.0
        warnings.append("constant symbol: not a Cowen-Douglas function; the circle criterion "
                        "does not apply")
        return ChaosReport(
            phi, Tri.NO, float(c), float(c), CDVerdict.FAILS, {},
            {k: Verdict.INDETERMINATE for k in PROPERTIES},
            {k: "constant symbol (outside the criterion)" for k in PROPERTIES},
            {"warnings": warnings})

    cd = is_cowen_douglas_sufficient(phi, samples=samples, seed=seed, eps_b=eps_b)
    ext = _extrema(phi, circle_samples, eps_b)
    tri = decide_intersection(ext.inf_mod, ext.sup_mod, ext.circle_spread, eps_dec)
    verdicts = _verdicts_from(tri)

    if cd.verdict == CDVerdict.SUFFICIENT_CONFIRMED:
        base = "equivalence with circle intersection (Cowen-Douglas confirmed on samples)"
        provenance = {k: base for k in PROPERTIES}
        for k in ("distributional", "strong_mixing"):
            provenance[k] = base + "; not tested dynamically"
    else:
        weak = "circle intersection outside the confirmed Cowen-Douglas class (weaker)"
        provenance = {k: weak for k in PROPERTIES}
        provenance["hypercyclic"] = "circle criterion for adjoint multipliers"
        provenance["devaney"] = "equivalent to hypercyclicity for adjoint multipliers"

    near = [name for name, val in (("inf_mod", ext.inf_mod), ("sup_mod", ext.sup_mod))
            if abs(val - 1) <= eps_dec]
    if near and tri == Tri.INDETERMINATE:
        warnings.append(f"tangency: {', '.join(near)} within {eps_dec:g} of 1")
    elif near:
        warnings.append("|phi| is identically 1 on the circle: image is the open unit disk")
    if cd.rooter_verdicts.get(RooterVerdict.INDETERMINATE.value):
        warnings.append("rooter roots in the boundary band at some base points")

    evidence = {
        "argmin_theta": None if np.isnan(ext.argmin) else ext.argmin,
        "argmax_theta": ext.argmax,
        "circle_min": ext.circle_min,
        "circle_spread": ext.circle_spread,
        "rooter_verdicts": dict(cd.rooter_verdicts),
        "notes": list(cd.notes),
        "warnings": warnings,
        "samples": samples,
        "seed": seed,
    }
    return ChaosReport(phi, tri, ext.inf_mod, ext.sup_mod, cd.verdict, cd.m_profile,
                       verdicts, provenance, evidence)


@dataclass(frozen=True)
class InverseCheck:
    report: ChaosReport
    inverse_report: ChaosReport
    agree: bool

    def __iter__(self):
        return iter((self.report, self.inverse_report, self.agree))


def inverse_invariance_check(phi, **kw):
    """Classify phi and 1/phi; agree when the five verdicts coincide."""
    inv = invert_symbol(phi)
    r = classify_chaos(phi, **kw)
    if r.cowen_douglas != CDVerdict.SUFFICIENT_CONFIRMED:
        raise PreconditionError("symbol is not confirmed Cowen-Douglas sufficient")
    ri = classify_chaos(inv, **kw)
    return InverseCheck(r, ri, r.verdicts == ri.verdicts)


# B_n verification

def kernel_vectors(phi, mu, N=DEFAULT_N, eps_b=EPS_BOUNDARY):
    """Reproducing kernels at the inside preimages of mu: eigenvectors of
    M_phi^* for conj(mu)."""
    q = shifted_numerator(phi, mu)
    if len(q) < 2:
        return []
    roots = polynomial_roots(q, eps_b=eps_b)
    return [reproducing_kernel(r.location, N) for r in roots
            if r.where == Location.INSIDE]


def kernel_span_residual(phi, n_points=64, n_probes=8, N=DEFAULT_N, seed=0):
    """Largest distance from e_0..e_{n_probes-1} to the span of kernel vectors
    collected at n_points sampled eigenvalues."""
    vecs = []
    for z0 in sample_disk(n_points, seed=seed):
        vecs.extend(kernel_vectors(phi, phi.eval(z0), N))
    K = np.column_stack([v.coeffs for v in vecs])
    Q, _ = np.linalg.qr(K)
    E = np.eye(N, n_probes, dtype=complex)
    R = E - Q @ (Q.conj().T @ E)
    return float(np.max(np.linalg.norm(R, axis=0)))


def separation_ok(roots, N, rank_tol=RANK_TOL, margin=1e-3):
    """True when inside roots decay fast enough at truncation N for the SVD
    rank to see them (|r|^N <= margin * rank_tol) and none is on the circle."""
    if roots.has_boundary:
        return False
    limit = (margin * rank_tol) ** (1.0 / N)
    return all(abs(r.location) <= limit for r in roots if r.where == Location.INSIDE)


@dataclass(frozen=True)
class BnReport:
    samples: list
    density_residual: float
    conditions: dict
    n: int | None
    verdict: str

    def to_dict(self):
        return {"verdict": self.verdict, "n": self.n, "conditions": dict(self.conditions),
                "density_residual": self.density_residual, "samples": self.samples}


def _bn_sample(args):
    phi, A, lam, z0, N, rank_tol, K, curve = args
    mu = np.conj(lam)
    wind = winding_number(curve, mu)
    dist = curve_distance(curve, mu)
    q = shifted_numerator(phi, mu)
    roots = polynomial_roots(q) if len(q) > 1 else None
    expected = roots.count(Location.INSIDE) if roots is not None else 0
    in_omega = bool(wind and wind > 0 and expected > 0)
    rec = {
        "z0": None if z0 is None else _c(z0),
        "lambda": _c(lam),
        "winding": wind,
        "curve_distance": dist,
        "in_spectrum": in_omega,
        "expected_dimension": expected,
        "separated": bool(roots is not None and separation_ok(roots, N, rank_tol)),
        "kernel_dimension": kernel_dimension(A, lam, rank_tol),
        "surjectivity_residual": surjectivity_residual(A, lam, K) if in_omega else None,
    }
    return rec


def verify_bn(phi, n_samples=16, N=128, rank_tol=RANK_TOL, K=32, seed=0, extra_lambdas=(),
              density_points=64, density_N=DEFAULT_N, surj_tol=1e-8, density_tol=1e-6,
              threads=None):
    """Truncated check of the four Cowen-Douglas class conditions for M_phi^*
    on Omega = conj(phi(D)).

    Sampled eigenvalues are lambda = conj(phi(z0)), |z0| <= 0.9; lambdas in
    ``extra_lambdas`` outside Omega are reported but never fail the check.
    Kernel dimensions are compared only where the preimage roots are
    separated from the circle enough for truncation N.
    """
    if phi.is_constant:
        raise ConstantSymbolError("constant symbols are not Cowen-Douglas")
    A = adjoint_mult_operator(phi, N)
    curve = spectrum_image(phi, 4096)
    z0s = list(sample_disk(n_samples, seed=seed))
    tasks = [(phi, A, complex(np.conj(phi.eval(z))), z, N, rank_tol, K, curve) for z in z0s]
    tasks += [(phi, A, complex(lam), None, N, rank_tol, K, curve) for lam in extra_lambdas]
    records = parallel_map(_bn_sample, tasks, threads=threads)

    sampled = records[:n_samples]
    omega = [r for r in records if r["in_spectrum"]]
    checked = [r for r in omega if r["separated"]]
    dims = {r["kernel_dimension"] for r in checked}
    density = kernel_span_residual(phi, density_points, N=density_N, seed=seed + 1)

    conditions = {
        "spectrum_containment": all(r["in_spectrum"] for r in sampled),
        "surjectivity": all(r["surjectivity_residual"] < surj_tol for r in omega),
        "kernel_span_density": density < density_tol,
        "constant_kernel_dimension": bool(checked) and len(dims) == 1 and all(
            r["kernel_dimension"] == r["expected_dimension"] for r in checked),
    }
    n = dims.pop() if len(dims) == 1 else None
    verdict = "PASS" if all(conditions.values()) else "FAIL"
    return BnReport(records, density, conditions, n, verdict)


def _c(z):
    z = complex(z)
    return [z.real, z.imag]
