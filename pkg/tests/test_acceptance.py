"""End-to-end acceptance checks. Each test prints one PASS/FAIL line in the
terminal summary."""

import functools
import io
import time
from pathlib import Path

import numpy as np
import pytest

from hardy_chaos import Symbol
from hardy_chaos.chaos import CDVerdict, Verdict, classify_chaos, inverse_invariance_check
from hardy_chaos.chaos import kernel_span_residual, separation_ok, shifted_numerator
from hardy_chaos.cli import main
from hardy_chaos.extrema import modulus_extrema
from hardy_chaos.hardy import HardyVec, reproducing_kernel
from hardy_chaos.operators import adjoint_mult_operator, kernel_dimension, mult_operator
from hardy_chaos.orbits import liyorke_witness
from hardy_chaos.parser import SymbolFamily
from hardy_chaos.region import scalar_region_scan
from hardy_chaos.roots import Location, polynomial_roots
from hardy_chaos.symbols import parse_symbol

from conftest import ACCEPTANCE_LINES
from helpers import random_disk_point, random_poly, random_symbol

GOLDEN = Path(__file__).parent / "golden" / "region_l_plus_z.pgm"
REGION_ARGS = ["region", "--family", "l + z", "--box", "-3,3", "--step", "0.05", "--format", "pgm"]


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kw):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kw)
            except BaseException as exc:
                ACCEPTANCE_LINES.append(f"[{number:02d}] FAIL {title}: {exc!s:.120}")
                raise
            extra = f" ({detail})" if detail else ""
            ACCEPTANCE_LINES.append(
                f"[{number:02d}] PASS {title}{extra} [{time.perf_counter() - t0:.1f}s]")
        return run
    return wrap


def region_mismatches(raster, inside):
    bad, checked = [], 0
    for i, y in enumerate(raster.im):
        for j, x in enumerate(raster.re):
            lam = complex(x, y)
            want = inside(lam)
            if want is None:
                continue
            checked += 1
            got = raster.cells[i][j]
            if got != (Verdict.CHAOTIC if want else Verdict.NOT_CHAOTIC):
                bad.append((lam, got))
    return bad, checked


@criterion(1, "region lambda + T is the punctured disk 0 < |lambda| < 2")
def test_region_annulus():
    r = scalar_region_scan(SymbolFamily("l + z"), (-3, 3, -3, 3), 0.05, threads=1)
    assert r.shape == (120, 120)

    def inside(lam):
        m = abs(lam)
        if m <= 1e-6 or abs(m - 2) <= 1e-6:
            return None
        return 0 < m < 2

    bad, checked = region_mismatches(r, inside)
    assert not bad, bad[:5]
    return f"{checked} cells checked, {r.count(Verdict.CHAOTIC)} chaotic"


@criterion(2, "region lambda + 2T is the disk |lambda| < 3")
def test_region_disk():
    r = scalar_region_scan(SymbolFamily("l + 2*z"), (-3, 3, -3, 3), 0.05, threads=1)

    def inside(lam):
        m = abs(lam)
        if abs(m - 3) <= 1e-6:
            return None
        return m < 3

    bad, checked = region_mismatches(r, inside)
    assert not bad, bad[:5]
    assert r.at(0j) == Verdict.CHAOTIC
    return f"{checked} cells checked, lambda = 0 chaotic"


@criterion(3, "SVD kernel dimension equals inside root count")
def test_kernel_dimension_oracle():
    rng = np.random.default_rng(2024)
    N, rank_tol = 128, 1e-8
    cases = 0
    for _ in range(20):
        deg = int(rng.integers(1, 7))
        phi = Symbol(random_poly(rng, deg))
        while phi.is_constant:
            phi = Symbol(random_poly(rng, deg))
        A = adjoint_mult_operator(phi, N)
        points = 0
        for _attempt in range(2000):
            if points == 5:
                break
            z0 = random_disk_point(rng, 0.8)
            mu = phi.eval(z0)
            roots = polynomial_roots(shifted_numerator(phi, mu))
            # roots must clear the boundary band and be resolvable at this N
            if not separation_ok(roots, N, rank_tol):
                continue
            dim = kernel_dimension(A, np.conj(mu), rank_tol)
            assert dim == roots.count(Location.INSIDE), (phi, z0)
            points += 1
            cases += 1
        assert points == 5, f"no separated sample points for {phi!r}"
    assert cases == 100
    return "100 cases"


@criterion(4, "eigenvector identity for reproducing kernels at N = 256")
def test_eigenvector_identity():
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(50):
        phi = Symbol(random_poly(rng, int(rng.integers(1, 5)), box=2.0))
        A = adjoint_mult_operator(phi, 256)
        for z in [random_disk_point(rng, 0.9) for _ in range(4)] + [0.9 * np.exp(1j * rng.uniform(0, 6.3))]:
            f = reproducing_kernel(z, 256)
            r = (A.apply(f) - f * np.conj(phi.eval(z))).norm() / f.norm()
            worst = max(worst, r)
    assert worst <= 1e-8
    return f"worst residual {worst:.1e}"


@criterion(5, "five chaos verdicts agree on 200 Cowen-Douglas symbols")
def test_equivalence_discipline():
    rng = np.random.default_rng(5)
    corpus, tries = [], 0
    while len(corpus) < 200:
        tries += 1
        phi = random_symbol(rng, max_deg=4, box=2.0)
        if phi.is_constant:
            continue
        rep = classify_chaos(phi)
        if rep.cowen_douglas == CDVerdict.SUFFICIENT_CONFIRMED:
            corpus.append(rep)
    split = {}
    for rep in corpus:
        assert len(set(rep.verdicts.values())) == 1, rep.to_dict()
        v = rep.verdict
        split[v.value] = split.get(v.value, 0) + 1
        if rep.intersects_circle.value == "YES":
            assert v == Verdict.CHAOTIC
    return f"{tries} drawn, {split}"


def _invertible_symbol(rng):
    # zeros outside the closed disk, optional pole outside as well
    deg = int(rng.integers(1, 4))
    roots = [random_disk_point(rng, 1.0) for _ in range(deg)]
    roots = [r / abs(r) * rng.uniform(1.1, 3.0) for r in roots]
    scale = rng.uniform(0.05, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    num = scale * np.poly(roots)[::-1]
    if rng.uniform() < 0.3:
        pole = random_disk_point(rng, 1.0)
        pole = pole / abs(pole) * rng.uniform(1.5, 4.0)
        return Symbol(num, [-pole, 1.0])
    return Symbol(num)


@criterion(6, "chaos of phi and 1/phi agree on 50 invertible symbols")
def test_inverse_invariance():
    rng = np.random.default_rng(6)
    done, tries = 0, 0
    split = {}
    while done < 50:
        tries += 1
        phi = _invertible_symbol(rng)
        rep = classify_chaos(phi)
        if rep.cowen_douglas != CDVerdict.SUFFICIENT_CONFIRMED or not rep.decided:
            continue
        rep, inv, agree = inverse_invariance_check(phi)
        if not inv.decided:
            continue
        assert agree, (phi, rep.verdict, inv.verdict)
        split[rep.verdict.value] = split.get(rep.verdict.value, 0) + 1
        done += 1
    return f"{tries} drawn, {split}"


@criterion(7, "block witness for 2z at N = H = 4096")
def test_liyorke_witness():
    _, st = liyorke_witness(parse_symbol("2*z"), 4096, 4096)
    assert st.limsup_est >= 1
    assert st.liminf_est <= 1e-3
    return f"limsup {st.limsup_est:.3g}, liminf {st.liminf_est:.3g}"


@criterion(8, "multiplier norm bound on 100 random pairs")
def test_norm_bound():
    rng = np.random.default_rng(8)
    worst = -np.inf
    for k in range(100):
        phi = random_symbol(rng, max_deg=5, box=2.0)
        if k % 3 == 0:
            pole = random_disk_point(rng, 1.0)
            phi = phi / Symbol([-pole / abs(pole) * rng.uniform(1.2, 3.0), 1.0])
        _, sup = modulus_extrema(phi)
        g = HardyVec(rng.normal(size=128) + 1j * rng.normal(size=128))
        lhs = mult_operator(phi, 128).apply(g).norm()
        rel = lhs / (sup * g.norm()) - 1
        worst = max(worst, rel)
        assert rel <= 1e-10
    return f"max ||M g|| / (sup ||g||) - 1 = {worst:.2e}"


@criterion(9, "kernel span density at N = 256")
@pytest.mark.parametrize("text", ["z", "z^2", "1.5 + z"])
def test_kernel_density(text):
    res = kernel_span_residual(parse_symbol(text), n_points=64, n_probes=8, N=256)
    assert res < 1e-6
    return f"{text}: residual {res:.1e}"


def _region_bytes():
    raw = io.BytesIO()
    out = io.TextIOWrapper(raw, encoding="latin-1")
    code = main(list(REGION_ARGS), stdout=out, stderr=io.StringIO())
    out.flush()
    assert code == 0
    return raw.getvalue()


@criterion(10, "region raster is byte-identical to the golden file")
def test_golden_determinism():
    first = _region_bytes()
    second = _region_bytes()
    assert first == second
    assert first == GOLDEN.read_bytes()
    return f"{len(first)} bytes"
