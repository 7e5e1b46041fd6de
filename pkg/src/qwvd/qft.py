"""Two-sided quaternion Fourier transform.

    F(u) = sum_t exp(-lam u1 t1) f(t) exp(-mu u2 t2) dt

with the left exponential multiplying from the left and the right one from
the right. Frequencies are angular (no 2*pi in the kernel); the inverse
carries ``1/(2*pi)^2``.

:func:`qft_forward` is the normative definition and accepts any pair of
pure unit axes. :func:`qft_fast` handles ``lam = i, mu = j`` with complex
FFTs and must agree with it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FastPathError
from .grid import (GridGeometry, SampledSignal, Spectrum, component_split,
                   recombine)
from .quaternion import AXIS_I, AXIS_J, PureUnitAxis, as_qarray, qabs2, qmul, unit_left

__all__ = [
    "AxisPair",
    "STANDARD_AXES",
    "ModuleSpectrum",
    "two_sided_sum",
    "angular_freq_grid",
    "qft_values",
    "qft_forward",
    "qft_inverse",
    "qft_module_spectrum",
    "qft_fast",
    "qft_fast_values",
    "is_commensurate",
]


@dataclass(frozen=True)
class AxisPair:
    left: PureUnitAxis = AXIS_I
    right: PureUnitAxis = AXIS_J

    @property
    def is_standard(self) -> bool:
        return self.left == AXIS_I and self.right == AXIS_J

    def __str__(self):
        return f"{self.left.name} {self.right.name}"


STANDARD_AXES = AxisPair(AXIS_I, AXIS_J)


def two_sided_sum(values, theta1, theta2, axes: AxisPair, amp1=1.0, amp2=1.0,
                  weight: float = 1.0) -> np.ndarray:
    """Separable two-sided kernel sum.

    Computes, for every output pair ``(a, b)``::

        sum_{k1,k2} amp1[a,k1] exp(lam theta1[a,k1]) v[k1,k2] exp(mu theta2[b,k2]) amp2[b,k2]

    times ``weight``. ``values`` has shape ``(..., n1, n2, 4)``; ``theta1`` is
    ``(m1, n1)`` and ``theta2`` is ``(m2, n2)``. Amplitudes are real and
    broadcast against the angle arrays. Leading axes of ``values`` are
    carried through as a batch.
    """
    v = as_qarray(values)
    theta1 = np.asarray(theta1, dtype=float)
    theta2 = np.asarray(theta2, dtype=float)
    c1 = np.cos(theta1) * amp1
    s1 = np.sin(theta1) * amp1
    c2 = np.cos(theta2) * amp2
    s2 = np.sin(theta2) * amp2
    lv = qmul(axes.left.to_array(), v)
    # exp(lam th) v = cos(th) v + sin(th) (lam v); same on the right with (v mu)
    g = (np.einsum("ak,...kbq->...abq", c1, v, optimize=True)
         + np.einsum("ak,...kbq->...abq", s1, lv, optimize=True))
    gm = qmul(g, axes.right.to_array())
    out = (np.einsum("bk,...akq->...abq", c2, g, optimize=True)
           + np.einsum("bk,...akq->...abq", s2, gm, optimize=True))
    return out * weight


def angular_freq_grid(geometry: GridGeometry, scale=(1.0, 1.0), center=(0.0, 0.0),
                      size: tuple[int, int] | None = None) -> GridGeometry:
    """Frequency grid matched to the DFT of ``geometry``.

    Spacing is ``2*pi*|scale|/(n*delta)`` per axis, so one full period of the
    DFT is covered when ``size`` equals the time grid shape. Samples run over
    ``l = -m/2 .. m/2-1`` around the multiple of the spacing nearest to
    ``center``. ``scale`` is the LCT ``b`` parameter (``1`` for the plain QFT).
    """
    m1, m2 = size if size is not None else geometry.shape
    out = []
    for n, d, s, c, m in ((geometry.n1, geometry.delta1, scale[0], center[0], m1),
                          (geometry.n2, geometry.delta2, scale[1], center[1], m2)):
        du = 2.0 * math.pi * abs(s) / (n * d)
        l0 = round(c / du) if du > 0 else 0
        out.append((du, (l0 - m // 2) * du))
    (du1, o1), (du2, o2) = out
    return GridGeometry(m1, m2, du1, du2, o1, o2)


def qft_values(values, t1, t2, u1, u2, axes: AxisPair = STANDARD_AXES,
               weight: float = 1.0) -> np.ndarray:
    """QFT of sampled ``values`` at arbitrary frequency coordinates (direct sum)."""
    th1 = -np.outer(u1, t1)
    th2 = -np.outer(u2, t2)
    return two_sided_sum(values, th1, th2, axes, weight=weight)


def qft_forward(f: SampledSignal, axes: AxisPair = STANDARD_AXES,
                freq_grid: GridGeometry | None = None) -> Spectrum:
    g = f.geometry
    freq_grid = freq_grid or angular_freq_grid(g)
    vals = qft_values(f.values, g.axis1(), g.axis2(), freq_grid.axis1(), freq_grid.axis2(),
                      axes, weight=g.cell)
    return Spectrum(freq_grid, vals)


def qft_inverse(F: SampledSignal, axes: AxisPair = STANDARD_AXES,
                time_grid: GridGeometry | None = None) -> SampledSignal:
    """``f(t) = (2 pi)^-2 sum_u exp(lam u1 t1) F(u) exp(mu u2 t2) du``."""
    if time_grid is None:
        raise ValueError("time_grid is required")
    fg = F.geometry
    th1 = np.outer(time_grid.axis1(), fg.axis1())
    th2 = np.outer(time_grid.axis2(), fg.axis2())
    vals = two_sided_sum(F.values, th1, th2, axes, weight=fg.cell / (4.0 * math.pi ** 2))
    return SampledSignal(time_grid, vals)


@dataclass(frozen=True)
class ModuleSpectrum:
    """Spectra of the four real components of a signal.

    The module norm ``||F{f}(u)||_Q = sqrt(sum_m |F{f_m}(u)|^2)`` is built from
    these; it differs from ``|F{f}(u)|_Q`` unless ``f`` is real.
    """

    components: tuple[Spectrum, Spectrum, Spectrum, Spectrum]

    @property
    def geometry(self) -> GridGeometry:
        return self.components[0].geometry

    def pointwise_norm(self) -> np.ndarray:
        return np.sqrt(sum(qabs2(c.values) for c in self.components))

    def l2_norm(self) -> float:
        return math.sqrt(float(np.sum(self.pointwise_norm() ** 2)) * self.geometry.cell)


def qft_module_spectrum(f: SampledSignal, axes: AxisPair = STANDARD_AXES,
                        freq_grid: GridGeometry | None = None, fast: bool | None = None
                        ) -> ModuleSpectrum:
    freq_grid = freq_grid or angular_freq_grid(f.geometry)
    if fast is None:
        fast = axes.is_standard and is_commensurate(f.geometry, freq_grid)
    comps = []
    for part in component_split(f):
        fm = recombine(f.geometry, (part, 0 * part, 0 * part, 0 * part))
        comps.append(qft_fast(fm, freq_grid) if fast else qft_forward(fm, axes, freq_grid))
    return ModuleSpectrum(tuple(comps))


# ---------------------------------------------------------------- FFT path

def _dft_index(u, n: int, delta: float) -> np.ndarray:
    """DFT bin index for each angular frequency, or raise if not on the bin lattice."""
    x = np.asarray(u, dtype=float) * n * delta / (2.0 * math.pi)
    idx = np.rint(x)
    if np.any(np.abs(x - idx) > 1e-8 * np.maximum(1.0, np.abs(idx))):
        raise FastPathError(
            "frequency grid is not commensurate with the FFT bins "
            f"(need u = 2*pi*l/(n*delta)); use qft_forward")
    return idx.astype(int)


def is_commensurate(time_grid: GridGeometry, freq_grid: GridGeometry, scale=(1.0, 1.0)) -> bool:
    try:
        _dft_index(freq_grid.axis1() / scale[0], time_grid.n1, time_grid.delta1)
        _dft_index(freq_grid.axis2() / scale[1], time_grid.n2, time_grid.delta2)
    except FastPathError:
        return False
    return True


def _axis_dft(x: np.ndarray, axis: int, origin: float, delta: float, u, sign: int) -> np.ndarray:
    """``sum_k x[k] exp(-i*sign*u*(origin + k*delta))`` along ``axis`` for each ``u``."""
    n = x.shape[axis]
    idx = _dft_index(u, n, delta) % n
    if sign > 0:
        X = np.fft.fft(x, axis=axis)
    else:
        X = np.fft.ifft(x, axis=axis) * n
    X = np.take(X, idx, axis=axis)
    phase = np.exp(-1j * sign * np.asarray(u) * origin)
    shape = [1] * X.ndim
    shape[axis] = -1
    return X * phase.reshape(shape)


def _real_component_qft(g: np.ndarray, geom: tuple, u1, u2, sign1: int) -> np.ndarray:
    """QFT (i, j) of a real array at ``(sign1*u1, u2)``; shape (..., m1, m2, 4).

    For real ``g`` the two-sided kernel splits into cos/sin products, which
    are recovered from two complex 2D DFTs P (kernel exp(-i(a+b))) and
    M (kernel exp(-i(a-b))).
    """
    o1, d1, o2, d2 = geom
    a = _axis_dft(g.astype(complex), -2, o1, d1, u1 * sign1, +1)
    P = _axis_dft(a, -1, o2, d2, u2, +1)
    M = _axis_dft(a, -1, o2, d2, u2, -1)
    out = np.empty(P.shape + (4,))
    out[..., 0] = 0.5 * (P.real + M.real)
    out[..., 1] = 0.5 * (P.imag + M.imag)
    out[..., 2] = 0.5 * (P.imag - M.imag)
    out[..., 3] = 0.5 * (M.real - P.real)
    return out


def qft_fast_values(values, geom: tuple, u1, u2, weight: float = 1.0) -> np.ndarray:
    """FFT evaluation of the (i, j) QFT for batched values of shape (..., n1, n2, 4).

    ``geom`` is ``(origin1, delta1, origin2, delta2)`` of the sample grid and
    ``u1``/``u2`` are 1D angular frequency arrays on the DFT bin lattice.

    With ``f = f0 + i f1 + j f2 + k f3``, the units ``i`` commute with the left
    kernel while ``j`` and ``k`` flip the sign of its angle, giving
    ``F{f}(u) = F0(u) + i F1(u) + j F2(-u1, u2) + k F3(-u1, u2)``.
    """
    v = as_qarray(values)
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    out = _real_component_qft(v[..., 0], geom, u1, u2, +1)
    out += unit_left("i", _real_component_qft(v[..., 1], geom, u1, u2, +1))
    out += unit_left("j", _real_component_qft(v[..., 2], geom, u1, u2, -1))
    out += unit_left("k", _real_component_qft(v[..., 3], geom, u1, u2, -1))
    if weight != 1.0:
        out *= weight
    return out


def qft_fast(f: SampledSignal, freq_grid: GridGeometry | None = None,
             axes: AxisPair = STANDARD_AXES) -> Spectrum:
    """FFT-factored QFT for ``lam = i, mu = j`` on a DFT-commensurate frequency grid."""
    if not axes.is_standard:
        raise FastPathError(f"fast path supports axes (i, j) only, got ({axes}); use qft_forward")
    g = f.geometry
    freq_grid = freq_grid or angular_freq_grid(g)
    vals = qft_fast_values(f.values, (g.origin1, g.delta1, g.origin2, g.delta2),
                           freq_grid.axis1(), freq_grid.axis2(), weight=g.cell)
    return Spectrum(freq_grid, vals)
