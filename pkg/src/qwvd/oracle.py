"""Brute-force reference evaluators.

Each function writes its transform out as a literal sum, one output sample
at a time, with kernels rebuilt from their closed forms here rather than
shared with the production modules. They are slow on purpose and guarded
against accidental large inputs; pass ``allow_large=True`` to lift the guard.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import OracleSizeError
from .grid import GridGeometry, SampledSignal, Spectrum
from .qft import STANDARD_AXES, AxisPair
from .qolct import OffsetParams
from .quaternion import axis_exp_array, qconj, qmul, sqrt_axis_phase, conj

__all__ = ["oracle_qft", "oracle_qolct", "oracle_qlct", "oracle_wvd"]

QFT_LIMIT = 32
WVD_LIMIT = 8


def _guard(geom: GridGeometry, limit: int, allow_large: bool, what: str) -> None:
    if not allow_large and max(geom.n1, geom.n2) > limit:
        raise OracleSizeError(
            f"{what} oracle limited to {limit} samples per axis, got {geom.shape}; "
            "pass allow_large=True to override")


def oracle_qft(f: SampledSignal, axes: AxisPair = STANDARD_AXES,
               freq_grid: GridGeometry | None = None, allow_large: bool = False) -> Spectrum:
    g = f.geometry
    _guard(g, QFT_LIMIT, allow_large, "QFT")
    freq_grid = freq_grid or g
    t1, t2 = g.axis1(), g.axis2()
    out = np.zeros(freq_grid.shape + (4,))
    for a, u1 in enumerate(freq_grid.axis1()):
        left = axis_exp_array(axes.left, -u1 * t1)[:, None, :]
        for b, u2 in enumerate(freq_grid.axis2()):
            right = axis_exp_array(axes.right, -u2 * t2)[None, :, :]
            out[a, b] = qmul(qmul(left, f.values), right).sum(axis=(0, 1)) * g.cell
    return Spectrum(freq_grid, out)


def _literal_kernel(p: OffsetParams, axis, t, u, with_offset: bool) -> np.ndarray:
    """Kernel samples ``K(t, u)`` as a quaternion array; ``t`` and ``u`` broadcast."""
    if with_offset:
        expo = (p.a * t ** 2 - 2 * t * (u - p.tau) - 2 * u * (p.d * p.tau - p.b * p.eta)
                + p.d * (u ** 2 + p.tau ** 2)) / (2 * p.b)
    else:
        expo = (p.a * t ** 2 - 2 * t * u + p.d * u ** 2) / (2 * p.b)
    root = sqrt_axis_phase(axis)
    if p.b < 0:
        root = conj(root)
    return qmul(root.to_array(), axis_exp_array(axis, expo)) / math.sqrt(2 * math.pi * abs(p.b))


def _sample_index(x: float, origin: float, delta: float, n: int) -> int | None:
    k = int(round((x - origin) / delta))
    return k if 0 <= k < n else None


def _point_factor(p: OffsetParams, axis, u: float) -> np.ndarray:
    """``sqrt|d| exp(axis (c d (u - tau)^2 / 2 + u tau))`` for a ``b = 0`` axis."""
    chirp = p.c * p.d / 2 * (u - p.tau) ** 2 + u * p.tau
    return math.sqrt(abs(p.d)) * axis_exp_array(axis, np.float64(chirp))


def _literal_olct(f: SampledSignal, p1, p2, axes, freq_grid, with_offset: bool) -> np.ndarray:
    """Literal two-sided sum, looping over ``u1`` and summing ``t1`` before ``t2``."""
    g = f.geometry
    t1, t2 = g.axis1(), g.axis2()
    u2 = freq_grid.axis2()
    out = np.zeros(freq_grid.shape + (4,))
    for a, u1 in enumerate(freq_grid.axis1()):
        # inner = sum_t1 K1(t1, u1) f(t1, t2), a function of t2
        if p1.b != 0:
            left = _literal_kernel(p1, axes.left, t1, u1, with_offset)
            inner = qmul(left[:, None, :], f.values).sum(axis=0) * g.delta1
        else:
            k = _sample_index(p1.d * (u1 - p1.tau), g.origin1, g.delta1, g.n1)
            if k is None:
                continue
            inner = qmul(_point_factor(p1, axes.left, u1), f.values[k])
        if p2.b != 0:
            right = _literal_kernel(p2, axes.right, t2[None, :], u2[:, None], with_offset)
            out[a] = qmul(inner[None, :, :], right).sum(axis=1) * g.delta2
        else:
            for b, uu in enumerate(u2):
                k = _sample_index(p2.d * (uu - p2.tau), g.origin2, g.delta2, g.n2)
                if k is not None:
                    out[a, b] = qmul(inner[k], _point_factor(p2, axes.right, uu))
    return out


def oracle_qolct(f: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                 axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None,
                 allow_large: bool = False) -> Spectrum:
    _guard(f.geometry, QFT_LIMIT, allow_large, "QOLCT")
    freq_grid = freq_grid or f.geometry
    return Spectrum(freq_grid, _literal_olct(f, p1, p2, axes, freq_grid, True))


def oracle_qlct(f: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None,
                allow_large: bool = False) -> Spectrum:
    """Offset-free LCT kernel summed literally; offsets in ``p1``/``p2`` are ignored."""
    _guard(f.geometry, QFT_LIMIT, allow_large, "QLCT")
    freq_grid = freq_grid or f.geometry
    q1 = OffsetParams(p1.a, p1.b, p1.c, p1.d)
    q2 = OffsetParams(p2.a, p2.b, p2.c, p2.d)
    return Spectrum(freq_grid, _literal_olct(f, q1, q2, axes, freq_grid, False))


def oracle_wvd(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
               axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None,
               allow_large: bool = False) -> np.ndarray:
    """Literal (t, u, s) sum of the WVD-QOLCT on the signal's time grid.

    Lags are ``s = 2*j*delta`` for ``j = -n..n-1`` so ``t +- s/2`` are time
    samples. Returns a ``(n1, n2, m1, m2, 4)`` array.
    """
    geo = f.geometry
    _guard(geo, WVD_LIMIT, allow_large, "WVD")
    n1, n2 = geo.shape
    j1 = np.arange(-n1, n1)
    j2 = np.arange(-n2, n2)
    s1 = 2 * j1 * geo.delta1
    s2 = 2 * j2 * geo.delta2
    if freq_grid is None:
        raise ValueError("oracle_wvd needs an explicit freq_grid")
    m1, m2 = freq_grid.shape
    out = np.zeros((n1, n2, m1, m2, 4))
    gbar = qconj(g.values)
    for k1 in range(n1):
        for k2 in range(n2):
            h = np.zeros((2 * n1, 2 * n2, 4))
            for a, jj1 in enumerate(j1):
                if not (0 <= k1 + jj1 < n1 and 0 <= k1 - jj1 < n1):
                    continue
                for b, jj2 in enumerate(j2):
                    if 0 <= k2 + jj2 < n2 and 0 <= k2 - jj2 < n2:
                        h[a, b] = qmul(f.values[k1 + jj1, k2 + jj2], gbar[k1 - jj1, k2 - jj2])
            lag = SampledSignal(GridGeometry(2 * n1, 2 * n2, 2 * geo.delta1, 2 * geo.delta2,
                                             s1[0], s2[0]), h)
            out[k1, k2] = _literal_olct(lag, p1, p2, axes, freq_grid, True)
    return out
