import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwvd.errors import FormatError, GeometryMismatchError, QuaternionDomainError
from qwvd.grid import (GridGeometry, SampledSignal, Spectrum, component_split,
                       correlation_product, inner_product, lag_geometry, lp_norm, read_qgrid,
                       recombine, write_qgrid, zero_pad)
from qwvd.quaternion import Quaternion, qconj, qmul


def _random(seed, n=8, half=2.0):
    rng = np.random.default_rng(seed)
    return SampledSignal(GridGeometry.centered(n, half), rng.standard_normal((n, n, 4)))


def test_geometry_validation_and_coordinates():
    with pytest.raises(ValueError):
        GridGeometry(1, 4, 1.0, 1.0)
    with pytest.raises(ValueError):
        GridGeometry(4, 4, 0.0, 1.0)
    g = GridGeometry(4, 5, 0.25, 0.5, -1.0, 2.0)
    assert g.coordinate(3, 2) == (-1.0 + 3 * 0.25, 2.0 + 2 * 0.5)
    assert g.cell == 0.125
    assert g.nearest_index(-0.26, 3.1) == (3, 2)
    c = GridGeometry.centered(64, 6.0)
    assert c.axis1()[0] == -6.0
    assert c.axis1()[c.n1 // 2] == pytest.approx(0.0, abs=1e-15)


def test_signal_shape_must_match():
    with pytest.raises(GeometryMismatchError):
        SampledSignal(GridGeometry(4, 4, 1.0, 1.0), np.zeros((4, 5, 4)))


def test_lp_norm_single_cell_and_homogeneity():
    geo = GridGeometry(6, 6, 0.3, 0.2)
    v = np.zeros((6, 6, 4))
    v[2, 3, 0] = 1.0
    assert lp_norm(SampledSignal(geo, v), 2) == pytest.approx(math.sqrt(geo.cell))
    f = _random(0)
    for p in (1.0, 2.0, 3.5):
        assert lp_norm(f.scaled(-3.0), p) == pytest.approx(3.0 * lp_norm(f, p), rel=1e-14)
    with pytest.raises(ValueError):
        lp_norm(f, 0.5)


def test_lp_norm_gaussian_closed_form():
    # integral of exp(-2 pi |t|^2) over the plane is 1/2
    geo = GridGeometry.centered(64, 4.0)
    f = SampledSignal.from_function(geo, lambda t1, t2: np.exp(-math.pi * (t1 ** 2 + t2 ** 2)))
    assert lp_norm(f, 2) == pytest.approx(1 / math.sqrt(2), abs=1e-6)


def test_inner_product_properties():
    f = _random(1)
    g = _random(2)
    ff = inner_product(f, f)
    assert abs(ff.vector) < 1e-12
    assert ff.scalar == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-12)
    a = np.zeros((8, 8, 4))
    b = np.zeros((8, 8, 4))
    a[:4] = 1.0
    b[4:] = 1.0
    geo = f.geometry
    assert abs(inner_product(SampledSignal(geo, a), SampledSignal(geo, b))) == 0.0
    with pytest.raises(GeometryMismatchError):
        inner_product(f, _random(3, n=6))


@pytest.mark.parametrize("seed", range(100))
def test_schwarz_inequality(seed):
    f, g = _random(2 * seed), _random(2 * seed + 1)
    lhs = abs(inner_product(f, g)) ** 2
    assert lhs <= lp_norm(f, 2) ** 2 * lp_norm(g, 2) ** 2 * (1 + 1e-12)


def test_lag_geometry_spacing():
    geo = GridGeometry(5, 6, 0.1, 0.3, -1.0, 0.0)
    lag = lag_geometry(geo)
    assert (lag.n1, lag.n2) == (10, 12)
    assert (lag.delta1, lag.delta2) == (0.2, 0.6)
    assert lag.origin1 == pytest.approx(-1.0)
    odd = lag_geometry(geo, (1, 1))
    assert odd.origin1 == pytest.approx(-0.9)


def test_correlation_product_delta():
    geo = GridGeometry.centered(8, 2.0)
    v = np.zeros((8, 8, 4))
    v[3, 5] = [0.5, 1.0, -2.0, 0.25]
    f = SampledSignal(geo, v)
    h = correlation_product(f, f, (3, 5))
    nz = np.argwhere(np.abs(h.values).sum(axis=-1) > 0)
    assert nz.tolist() == [[8, 8]]  # s = 0 sits at lag index n
    assert h.values[8, 8, 0] == pytest.approx(abs(f[3, 5]) ** 2)


def test_correlation_product_brute_force():
    f, g = _random(4), _random(5)
    n = 8
    k = (2, 5)
    h = correlation_product(f, g, k)
    for j1 in range(-n, n):
        for j2 in range(-n, n):
            p = (k[0] + j1, k[1] + j2)
            m = (k[0] - j1, k[1] - j2)
            ok = all(0 <= x < n for x in p + m)
            ref = qmul(f.values[p], qconj(g.values[m])) if ok else np.zeros(4)
            np.testing.assert_allclose(h.values[j1 + n, j2 + n], ref, atol=1e-15)


def test_correlation_product_conjugate_symmetry():
    f = _random(6)
    h = correlation_product(f, f, (4, 3)).values
    n = 8
    for j1 in range(-n + 1, n):
        for j2 in range(-n + 1, n):
            np.testing.assert_allclose(h[n - j1, n - j2], qconj(h[n + j1, n + j2]), atol=1e-15)


def test_correlation_product_zero_lag_and_real_gaussian():
    f, g = _random(7), _random(8)
    h = correlation_product(f, g, (1, 6))
    np.testing.assert_array_equal(h.values[8, 8], qmul(f.values[1, 6], qconj(g.values[1, 6])))
    geo = GridGeometry.centered(8, 2.0)
    r = SampledSignal.from_function(geo, lambda a, b: np.exp(-(a * a + b * b) / 2))
    hz = correlation_product(r, r, (4, 4)).values
    assert np.all(hz[8, :, 1:] == 0.0)


def test_component_split_recombine():
    f = _random(9)
    parts = component_split(f)
    np.testing.assert_array_equal(recombine(f.geometry, parts).values, f.values)
    real = SampledSignal.from_function(f.geometry, lambda a, b: a + b)
    p = component_split(real)
    assert all(np.all(x == 0) for x in p[1:])
    ig = real.left_mul(Quaternion(0, 1))
    p = component_split(ig)
    np.testing.assert_array_equal(p[1], real.values[..., 0])
    assert all(np.all(p[m] == 0) for m in (0, 2, 3))


def test_zero_pad_preserves_norm():
    f = _random(10)
    g = zero_pad(f, 3)
    assert g.geometry.shape == (14, 14)
    assert g.geometry.coordinate(3, 3) == pytest.approx(f.geometry.coordinate(0, 0))
    assert abs(lp_norm(g, 2) - lp_norm(f, 2)) < 1e-12 * lp_norm(f, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(-5, 5), st.floats(-5, 5))
def test_real_linearity_of_inner_product(seed, a, b):
    f, g, h = _random(seed), _random(seed + 1), _random(seed + 2)
    lhs = inner_product(f.scaled(a) + g.scaled(b), h)
    rhs = inner_product(f, h) * a + inner_product(g, h) * b
    assert abs(lhs - rhs) <= 1e-10 * (1 + abs(lhs))


def test_qgrid_round_trip(tmp_path):
    f = _random(11, n=5)
    path = tmp_path / "f.qgrid"
    write_qgrid(f, path)
    assert path.read_text().startswith("QGRID 5 5 ")
    g = read_qgrid(path)
    assert type(g) is SampledSignal
    np.testing.assert_array_equal(g.values, f.values)
    assert g.geometry == f.geometry
    s = Spectrum(f.geometry, f.values)
    write_qgrid(s, path)
    assert path.read_text().startswith("QGRID-FREQ ")
    assert type(read_qgrid(path)) is Spectrum


@pytest.mark.parametrize("text", [
    "NOPE 2 2 1 1 0 0\n",
    "QGRID 2 2 1 1 0\n",
    "QGRID 2 2 1 1 0 0\n0 0 0 0\n",
    "QGRID 2 2 1 1 0 0\n" + "0 0 0 x\n" * 4,
    "QGRID 2 2 1 1 0 0\n" + "0 0 0\n" * 4,
])
def test_qgrid_rejects_malformed(tmp_path, text):
    path = tmp_path / "bad.qgrid"
    path.write_text(text)
    with pytest.raises(FormatError):
        read_qgrid(path)


def test_empty_signal_rejected():
    # a geometry cannot be empty, so the guard fires only on a hand-built array
    f = _random(12)
    object.__setattr__(f, "values", np.zeros((0, 0, 4)))
    with pytest.raises(QuaternionDomainError):
        lp_norm(f, 2)
