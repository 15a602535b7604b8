import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardy_chaos.roots import (EPS_ROOT, Location, classify_point, horner, poly_from_roots,
                               polynomial_roots)

from helpers import random_poly


def locations(rs):
    return sorted((round(r.location.real, 10), r.where) for r in rs)


def test_two_inside_roots():
    rs = polynomial_roots([-0.0625, 0, 1])
    assert locations(rs) == [(-0.25, Location.INSIDE), (0.25, Location.INSIDE)]


def test_inside_and_outside():
    rs = polynomial_roots([1, -2.5, 1])
    assert locations(rs) == [(0.5, Location.INSIDE), (2.0, Location.OUTSIDE)]


def test_boundary_band():
    assert classify_point(1 + 5e-10) == Location.BOUNDARY
    assert classify_point(1 - 5e-10) == Location.BOUNDARY
    assert classify_point(1 - 2e-9) == Location.INSIDE
    rs = polynomial_roots([-1j, 1])
    assert rs.has_boundary


def test_double_root_merged():
    rs = polynomial_roots(poly_from_roots([0.3, 0.3, -2]))
    assert sorted(r.multiplicity for r in rs) == [1, 2]
    assert rs.count(Location.INSIDE) == 2


def test_triple_root_count_kept():
    # a triple root spreads to ~1e-5, beyond the merge radius, but the
    # per-location count is unaffected
    rs = polynomial_roots(poly_from_roots([0.3, 0.3, 0.3, -2]))
    assert rs.count(Location.INSIDE) == 3
    assert rs.count(Location.OUTSIDE) == 1


def test_zero_roots_split_off():
    rs = polynomial_roots([0, 0, 1, 1])
    assert rs.count(Location.INSIDE) == 2
    assert any(r.location == 0 and r.multiplicity == 2 for r in rs)


def test_random_degree_six_residual():
    rng = np.random.default_rng(7)
    for _ in range(50):
        c = random_poly(rng, 6)
        rs = polynomial_roots(c)
        z = np.array(rs.expanded())
        assert z.size == 6
        scale = np.max(np.abs(c)) * np.maximum(1, np.abs(z)) ** 6
        assert np.all(np.abs(horner(c, z)) <= EPS_ROOT * scale)


def test_matches_numpy_oracle():
    rng = np.random.default_rng(11)
    for _ in range(100):
        c = random_poly(rng, int(rng.integers(1, 8)))
        ours = np.sort_complex(np.array(polynomial_roots(c).expanded()))
        ref = np.sort_complex(np.roots(c[::-1]))
        # match each reference root to the nearest computed one
        d = np.abs(ref[:, None] - ours[None, :]).min(axis=1)
        assert np.all(d < 1e-8)


def test_constant_rejected():
    with pytest.raises(ValueError):
        polynomial_roots([3.0])


complex_coef = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(st.lists(complex_coef, min_size=2, max_size=7))
def test_round_trip_reconstruction(coeffs):
    c = np.array(coeffs, dtype=complex)
    if abs(c[-1]) < 1e-3:
        c[-1] = 1.0
    rs = polynomial_roots(c)
    back = poly_from_roots(rs.expanded(), rs.leading)
    d = len(c) - 1
    # clustered roots carry an error of order cluster_radius^(1/m); skip those
    if any(r.multiplicity > 1 for r in rs):
        return
    assert np.max(np.abs(back - c)) <= EPS_ROOT * d * np.max(np.abs(c)) * max(
        1.0, max(abs(r.location) for r in rs)) ** d * 10


def test_widely_spread_moduli():
    # roots 3.7e-75 and -1: a single starting circle would put both near 0
    rs = polynomial_roots([-3.69e-75, 1, 1])
    locs = sorted(r.location.real for r in rs)
    assert np.isclose(locs[0], -1) and abs(locs[1] - 3.69e-75) < 1e-88
