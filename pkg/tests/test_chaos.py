import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardy_chaos import Symbol
from hardy_chaos.chaos import (PROPERTIES, CDVerdict, RooterVerdict, Tri, Verdict,
                               circle_intersection, classify_chaos, decide_intersection,
                               inverse_invariance_check, is_cowen_douglas_sufficient,
                               kernel_span_residual, rooter_decomposition, sample_disk, verify_bn)
from hardy_chaos.errors import ConstantSymbolError, PreconditionError
from hardy_chaos.roots import horner
from hardy_chaos.symbols import parse_symbol


@pytest.mark.parametrize("text, tri", [
    ("1.5 + z", Tri.YES),
    ("2.5 + z", Tri.NO),
    ("z", Tri.NO),
    ("2*z", Tri.YES),
    ("2 + z", Tri.INDETERMINATE),
    ("1/(2 + z)", Tri.INDETERMINATE),
    ("z^2", Tri.NO),
    ("0.5*z^3 + 0.2", Tri.NO),
    ("z^2 + 0.1*z + 3", Tri.NO),
    ("3*z^2 - 1", Tri.YES),
])
def test_circle_intersection(text, tri):
    assert circle_intersection(parse_symbol(text)) == tri


def test_decision_margin():
    assert decide_intersection(1 - 2e-7, 2, 1) == Tri.YES
    assert decide_intersection(1 - 5e-8, 2, 1) == Tri.INDETERMINATE
    assert decide_intersection(0, 1 + 5e-8, 1) == Tri.INDETERMINATE
    assert decide_intersection(0, 1.0, 0.0) == Tri.NO


def test_sample_disk_area_uniform():
    z = sample_disk(20000, seed=1)
    assert np.max(np.abs(z)) <= 0.9
    # half the area lies inside radius 0.9 / sqrt(2)
    frac = np.mean(np.abs(z) < 0.9 / np.sqrt(2))
    assert abs(frac - 0.5) < 0.02
    assert np.array_equal(sample_disk(64, seed=3), sample_disk(64, seed=3))


def test_rooter_z_squared():
    d = rooter_decomposition(parse_symbol("z^2"), 0.25)
    assert np.allclose(d.p, [-0.0625, 0, 1])
    assert d.h.is_constant and np.isclose(d.h.eval(0.3), 1)
    assert d.m == 2 and d.verdict == RooterVerdict.OUTER


def test_rooter_split_factor():
    d = rooter_decomposition(parse_symbol("z^2 - 2.5*z + 1"), 0.5)
    assert d.m == 1
    assert np.allclose(d.p, [-0.5, 1])
    assert np.allclose(d.h.num, [-2, 1])
    assert d.verdict == RooterVerdict.OUTER


def test_rooter_affine():
    for z0 in (0, 0.3 - 0.2j, -0.85j):
        d = rooter_decomposition(parse_symbol("(1-2i) + z"), z0)
        assert np.allclose(d.p, [-z0, 1]) and d.m == 1
        assert np.isclose(d.h.eval(0.1), 1)


def test_rooter_constant_rejected():
    with pytest.raises(ConstantSymbolError):
        rooter_decomposition(parse_symbol("3"), 0.1)


poly_coef = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(st.lists(poly_coef, min_size=2, max_size=5), st.floats(0, 0.9), st.floats(0, 2 * np.pi))
def test_rooter_reconstruction(coeffs, r, t):
    coeffs[-1] = coeffs[-1] + (1 if abs(coeffs[-1]) < 0.1 else 0)
    phi = Symbol(coeffs)
    z0 = r * np.exp(1j * t)
    try:
        d = rooter_decomposition(phi, z0)
    except PreconditionError:
        return
    pts = sample_disk(64, seed=5, radius=0.95)
    lhs = phi.eval(pts) - phi.eval(z0)
    rhs = horner(d.p, pts) * d.h.eval(pts)
    assert np.max(np.abs(lhs - rhs)) <= 1e-9 * max(1.0, np.max(np.abs(lhs)))
    assert d.reconstruction_error <= 1e-9
    assert d.p[-1] == 1 and len(d.p) == d.m + 1
    assert abs(d.h.eval(z0)) > 0


def test_cd_affine():
    res = is_cowen_douglas_sufficient(parse_symbol("(0.5-1i) + z"))
    assert res.verdict == CDVerdict.SUFFICIENT_CONFIRMED and res.m_profile == {1: 64}


def test_cd_z_squared():
    res = is_cowen_douglas_sufficient(parse_symbol("z^2"))
    assert res.verdict == CDVerdict.SUFFICIENT_CONFIRMED and res.m_profile == {2: 64}


def test_cd_rational_affine_denominator():
    res = is_cowen_douglas_sufficient(parse_symbol("1/(2 + z)"))
    assert res.verdict == CDVerdict.SUFFICIENT_CONFIRMED and res.m_profile == {1: 64}


def test_cd_non_m_folder_polynomial():
    # phi(z) - phi(z0) = (z - z0)(z - (1 - z0)): the second root is inside D
    # exactly when |1 - z0| < 1, so the sampled multiplicity varies
    res = is_cowen_douglas_sufficient(parse_symbol("z^2 - z"))
    assert res.verdict == CDVerdict.NOT_CONFIRMED
    assert set(res.m_profile) == {1, 2} and sum(res.m_profile.values()) == 64
    assert any("not m-folder" in n for n in res.notes)
    assert any("every non-constant polynomial" in n for n in res.notes)


def test_cd_constant_rejected():
    with pytest.raises(ConstantSymbolError):
        is_cowen_douglas_sufficient(parse_symbol("3"))


@pytest.mark.parametrize("text, verdict", [
    ("1.5 + z", Verdict.CHAOTIC),
    ("2.5 + z", Verdict.NOT_CHAOTIC),
    ("2*z", Verdict.CHAOTIC),
    ("z", Verdict.NOT_CHAOTIC),
    ("2 + z", Verdict.INDETERMINATE),
])
def test_classify_examples(text, verdict):
    rep = classify_chaos(parse_symbol(text))
    assert set(rep.verdicts) == set(PROPERTIES)
    assert all(v == verdict for v in rep.verdicts.values())
    assert rep.decided == (verdict != Verdict.INDETERMINATE)


def test_classify_constant_warns():
    rep = classify_chaos(parse_symbol("3"))
    assert rep.cowen_douglas == CDVerdict.FAILS
    assert not rep.decided
    assert any("constant" in w for w in rep.evidence["warnings"])


def test_classify_provenance_marks_untested_properties():
    rep = classify_chaos(parse_symbol("1.5 + z"))
    assert "not tested dynamically" in rep.provenance["strong_mixing"]
    assert "not tested dynamically" in rep.provenance["distributional"]


def test_report_dict_field_order():
    d = classify_chaos(parse_symbol("1.5 + z")).to_dict()
    assert list(d) == ["schema", "symbol", "intersects_circle", "inf_mod", "sup_mod",
                       "cowen_douglas", "m_profile", "verdicts", "provenance", "evidence"]


@pytest.mark.parametrize("text, verdict", [
    ("1.5 + z", Verdict.CHAOTIC),
    ("2.5 + z", Verdict.NOT_CHAOTIC),
    ("2 + z", Verdict.INDETERMINATE),
])
def test_inverse_invariance_examples(text, verdict):
    rep, inv, agree = inverse_invariance_check(parse_symbol(text))
    assert agree
    assert rep.verdict == inv.verdict == verdict


def test_inverse_invariance_extrema_oracle():
    _, inv, _ = inverse_invariance_check(parse_symbol("1.5 + z"))
    assert np.isclose(inv.inf_mod, 1 / 2.5) and np.isclose(inv.sup_mod, 1 / 0.5)


def test_inverse_requires_cd():
    with pytest.raises(Exception):
        inverse_invariance_check(parse_symbol("z"))


@pytest.mark.parametrize("text, n", [("z", 1), ("z^2", 2)])
def test_verify_bn(text, n):
    rep = verify_bn(parse_symbol(text), n_samples=16, N=128, extra_lambdas=(5.0,))
    assert rep.verdict == "PASS" and rep.n == n
    far = rep.samples[-1]
    assert far["in_spectrum"] is False and far["kernel_dimension"] == 0


def test_kernel_span_density_affine():
    assert kernel_span_residual(parse_symbol("1.5 + z"), N=256) < 1e-6
