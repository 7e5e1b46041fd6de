"""Quaternionic offset linear canonical transform (QOLCT).

Each axis ``l`` carries a unimodular matrix ``(a, b; c, d)`` plus offsets
``(tau, eta)``. For ``b != 0`` the kernel is

    K(t, u) = exp(-sgn(b) lam pi/4) / sqrt(2 pi |b|)
              * exp(lam (a t^2 - 2t(u - tau) - 2u(d tau - b eta) + d(u^2 + tau^2)) / (2b))

and the transform is ``sum_t K1(t1, u1) f(t) K2(t2, u2) dt`` with the
second kernel built on the right axis and multiplied from the right. For
``b == 0`` the axis degenerates to a scaled point evaluation
``sqrt|d| exp(lam (c d (u - tau)^2 / 2 + u tau)) f(d (u - tau))`` with the
argument snapped to the nearest sample.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchError, FastPathError
from .grid import GridGeometry, SampledSignal, Spectrum, component_split, lp_norm
from .qft import (STANDARD_AXES, AxisPair, angular_freq_grid, is_commensurate,
                  qft_fast_values, two_sided_sum)
from .quaternion import (AXIS_I, AXIS_J, PureUnitAxis, Quaternion, axis_exp, axis_exp_array, conj,
                         exp_left, exp_right, mul, qabs2, qmul, sqrt_axis_phase)

__all__ = [
    "OffsetParams",
    "QFT_PARAMS",
    "OlctKernelValue",
    "kernel_angle",
    "kernel_left",
    "kernel_right",
    "qlct_kernel_left",
    "qlct_kernel_right",
    "qolct_freq_grid",
    "qolct_values",
    "qolct_forward",
    "qlct_forward",
    "qolct_fast_values",
    "qolct_fast",
    "qolct_inverse_values",
    "qolct_inverse",
    "qolct_module_norm",
    "qolct_plancherel_check",
    "RelationReport",
    "qolct_from_qlct_relation",
]

OlctKernelValue = Quaternion


@dataclass(frozen=True)
class OffsetParams:
    a: float
    b: float
    c: float
    d: float
    tau: float = 0.0
    eta: float = 0.0

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        scale = max(1.0, abs(self.a * self.d), abs(self.b * self.c))
        if abs(det - 1.0) > 1e-12 * scale:
            raise ValueError(f"matrix must be unimodular, got a*d - b*c = {det!r}")

    @property
    def degenerate(self) -> bool:
        # exact test: the b == 0 branch is a different closed form, not a limit
        return self.b == 0.0

    def without_offset(self) -> "OffsetParams":
        return OffsetParams(self.a, self.b, self.c, self.d)

    @classmethod
    def parse(cls, text: str) -> "OffsetParams":
        parts = text.replace(",", " ").split()
        if len(parts) != 6:
            raise ValueError(f"expected six numbers 'a b c d tau eta', got {text!r}")
        return cls(*(float(x) for x in parts))

    def format(self) -> str:
        return " ".join(repr(float(x)) for x in (self.a, self.b, self.c, self.d, self.tau, self.eta))


QFT_PARAMS = OffsetParams(0.0, 1.0, -1.0, 0.0)


def _phase(p: OffsetParams, t, u) -> np.ndarray:
    """Kernel exponent for b != 0, shape (len(u), len(t))."""
    t = np.asarray(t, dtype=float)[None, :]
    u = np.asarray(u, dtype=float)[:, None]
    return (p.a * t * t - 2.0 * t * (u - p.tau) - 2.0 * u * (p.d * p.tau - p.b * p.eta)
            + p.d * (u * u + p.tau * p.tau)) / (2.0 * p.b)


def _amplitude(p: OffsetParams) -> float:
    return 1.0 / math.sqrt(2.0 * math.pi * abs(p.b))


def _root_phase(p: OffsetParams) -> float:
    # 1/sqrt(lam b) on the branch exp(-lam pi/4); negative b flips the angle
    return -math.copysign(math.pi / 4.0, p.b)


def kernel_angle(p: OffsetParams, t, u) -> np.ndarray:
    """Total angle of the kernel (chirp plus root phase), shape (len(u), len(t))."""
    if p.degenerate:
        raise BranchError("kernel undefined for b == 0")
    return _phase(p, t, u) + _root_phase(p)


def _kernel(p: OffsetParams, axis: PureUnitAxis, t: float, u: float) -> Quaternion:
    if p.degenerate:
        raise BranchError("kernel undefined for b == 0; use the degenerate branch")
    root = sqrt_axis_phase(axis) if p.b > 0 else conj(sqrt_axis_phase(axis))
    chirp = axis_exp(axis, float(_phase(p, [t], [u])[0, 0]))
    return mul(root, chirp) * _amplitude(p)


def kernel_left(p: OffsetParams, axis: PureUnitAxis, t1: float, u1: float) -> OlctKernelValue:
    return _kernel(p, axis, t1, u1)


def kernel_right(p: OffsetParams, axis: PureUnitAxis, t2: float, u2: float) -> OlctKernelValue:
    return _kernel(p, axis, t2, u2)


def _qlct_kernel(p: OffsetParams, axis: PureUnitAxis, t: float, u: float) -> Quaternion:
    if p.degenerate:
        raise BranchError("kernel undefined for b == 0")
    root = sqrt_axis_phase(axis) if p.b > 0 else conj(sqrt_axis_phase(axis))
    chirp = axis_exp(axis, (p.a * t * t - 2.0 * t * u + p.d * u * u) / (2.0 * p.b))
    return mul(root, chirp) * _amplitude(p)


def qlct_kernel_left(p, axis, t1, u1):
    """Offset-free LCT kernel; ignores ``tau`` and ``eta``."""
    return _qlct_kernel(p, axis, t1, u1)


def qlct_kernel_right(p, axis, t2, u2):
    return _qlct_kernel(p, axis, t2, u2)


# ---------------------------------------------------------------- axis operators

def _degenerate_chirp(p: OffsetParams, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return p.c * p.d / 2.0 * (u - p.tau) ** 2 + u * p.tau


def _nearest(x, origin: float, delta: float, n: int) -> np.ndarray:
    k = np.rint((np.asarray(x) - origin) / delta).astype(int)
    return np.where((k >= 0) & (k < n), k, -1)


def _forward_axis(p: OffsetParams, t_origin, t_delta, n, u, offset=True):
    """(gather index or None, angle matrix, amplitude, quadrature weight) for one axis."""
    u = np.asarray(u, dtype=float)
    if p.degenerate:
        idx = _nearest(p.d * (u - p.tau), t_origin, t_delta, n)
        m = len(u)
        theta = np.diag(_degenerate_chirp(p, u))
        amp = math.sqrt(abs(p.d)) * np.eye(m)
        return idx, theta, amp, 1.0
    t = t_origin + np.arange(n) * t_delta
    if offset:
        theta = kernel_angle(p, t, u)
    else:
        theta = (p.a * t[None, :] ** 2 - 2.0 * t[None, :] * u[:, None]
                 + p.d * u[:, None] ** 2) / (2.0 * p.b) + _root_phase(p)
    return None, theta, _amplitude(p), t_delta


def _gather_axis(v: np.ndarray, idx, axis: int) -> np.ndarray:
    if idx is None:
        return v
    taken = np.take(v, np.clip(idx, 0, v.shape[axis] - 1), axis=axis)
    shape = [1] * taken.ndim
    shape[axis] = -1
    return taken * (idx >= 0).reshape(shape)


def qolct_values(values, geom: GridGeometry, p1: OffsetParams, p2: OffsetParams,
                 axes: AxisPair, u1, u2, offset: bool = True) -> np.ndarray:
    """Direct QOLCT of batched ``values`` (..., n1, n2, 4) sampled on ``geom``."""
    idx1, th1, a1, w1 = _forward_axis(p1, geom.origin1, geom.delta1, geom.n1, u1, offset)
    idx2, th2, a2, w2 = _forward_axis(p2, geom.origin2, geom.delta2, geom.n2, u2, offset)
    v = _gather_axis(np.asarray(values, dtype=float), idx1, -3)
    v = _gather_axis(v, idx2, -2)
    return two_sided_sum(v, th1, th2, axes, amp1=a1, amp2=a2, weight=w1 * w2)


def qolct_freq_grid(geometry: GridGeometry, p1: OffsetParams, p2: OffsetParams,
                    size: tuple[int, int] | None = None) -> GridGeometry:
    """Frequency grid suited to the QOLCT of signals on ``geometry``.

    For ``b != 0`` the spacing makes ``u/b`` land on DFT bins (one full
    period), centred where the chirped spectrum sits: ``a*t_mid + tau``. For
    ``b == 0`` the output samples ``u = x/d + tau`` for grid points ``x``.
    """
    m1, m2 = size if size is not None else geometry.shape
    mid = (geometry.origin1 + 0.5 * (geometry.n1 - 1) * geometry.delta1,
           geometry.origin2 + 0.5 * (geometry.n2 - 1) * geometry.delta2)
    axes = []
    for l, p, n, d, o, m in ((0, p1, geometry.n1, geometry.delta1, geometry.origin1, m1),
                             (1, p2, geometry.n2, geometry.delta2, geometry.origin2, m2)):
        if p.degenerate:
            step = d / abs(p.d)
            axes.append((step, o / p.d + p.tau if p.d > 0 else (o + (n - 1) * d) / p.d + p.tau))
        else:
            du = 2.0 * math.pi * abs(p.b) / (n * d)
            l0 = round((p.a * mid[l] + p.tau) / du)
            axes.append((du, (l0 - m // 2) * du))
    return GridGeometry(m1, m2, axes[0][0], axes[1][0], axes[0][1], axes[1][1])


def qolct_forward(f: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                  axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None) -> Spectrum:
    freq_grid = freq_grid or qolct_freq_grid(f.geometry, p1, p2)
    vals = qolct_values(f.values, f.geometry, p1, p2, axes, freq_grid.axis1(), freq_grid.axis2())
    return Spectrum(freq_grid, vals)


def qlct_forward(f: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                 axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None) -> Spectrum:
    """Two-sided QLCT: offsets on ``p1``/``p2`` are ignored."""
    q1, q2 = p1.without_offset(), p2.without_offset()
    freq_grid = freq_grid or qolct_freq_grid(f.geometry, q1, q2)
    vals = qolct_values(f.values, f.geometry, q1, q2, axes, freq_grid.axis1(), freq_grid.axis2(),
                        offset=False)
    return Spectrum(freq_grid, vals)


# ---------------------------------------------------------------- chirp-FFT path

def _split_phases(p: OffsetParams, t, u):
    """Kernel exponent split as chirp(t) - t*u/b + post(u); returns (chirp, post)."""
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    chirp = (p.a * t * t + 2.0 * t * p.tau) / (2.0 * p.b)
    post = (-2.0 * u * (p.d * p.tau - p.b * p.eta) + p.d * (u * u + p.tau * p.tau)) / (2.0 * p.b)
    return chirp, post + _root_phase(p)


def qolct_fast_values(values, geom: GridGeometry, p1: OffsetParams, p2: OffsetParams,
                      u1, u2) -> np.ndarray:
    """Chirp-multiplication QOLCT for axes (i, j): pre-chirp, FFT at ``u/b``, post-phase.

    ``values`` may carry leading batch axes. Raises :class:`BranchError` when
    either ``b`` is zero.
    """
    if p1.degenerate or p2.degenerate:
        raise BranchError("chirp-FFT path needs b1*b2 != 0")
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    c1, post1 = _split_phases(p1, geom.axis1(), u1)
    c2, post2 = _split_phases(p2, geom.axis2(), u2)
    h = exp_right(exp_left(AXIS_I, c1[:, None], values), AXIS_J, c2[None, :])
    spec = qft_fast_values(h, (geom.origin1, geom.delta1, geom.origin2, geom.delta2),
                           u1 / p1.b, u2 / p2.b,
                           weight=geom.cell * _amplitude(p1) * _amplitude(p2))
    return exp_right(exp_left(AXIS_I, post1[:, None], spec), AXIS_J, post2[None, :])


def qolct_fast(f: SampledSignal, p1: OffsetParams, p2: OffsetParams,
               freq_grid: GridGeometry | None = None, axes: AxisPair = STANDARD_AXES) -> Spectrum:
    if not axes.is_standard:
        raise FastPathError(f"fast path supports axes (i, j) only, got ({axes}); use qolct_forward")
    freq_grid = freq_grid or qolct_freq_grid(f.geometry, p1, p2)
    vals = qolct_fast_values(f.values, f.geometry, p1, p2, freq_grid.axis1(), freq_grid.axis2())
    return Spectrum(freq_grid, vals)


# ---------------------------------------------------------------- inverse

def _inverse_axis(p: OffsetParams, u_origin, u_delta, m, t):
    t = np.asarray(t, dtype=float)
    if p.degenerate:
        idx = _nearest(t / p.d + p.tau, u_origin, u_delta, m)
        u_hit = u_origin + np.clip(idx, 0, m - 1) * u_delta
        theta = np.diag(-_degenerate_chirp(p, u_hit))
        amp = np.eye(len(t)) / math.sqrt(abs(p.d))
        return idx, theta, amp, 1.0
    u = u_origin + np.arange(m) * u_delta
    theta = -kernel_angle(p, t, u).T
    return None, theta, _amplitude(p), u_delta


def qolct_inverse_values(values, freq: GridGeometry, p1: OffsetParams, p2: OffsetParams,
                         axes: AxisPair, t1, t2) -> np.ndarray:
    """``sum_u conj K1(t1, u1) F(u) conj K2(t2, u2) du`` at coordinates ``t1 x t2``."""
    idx1, th1, a1, w1 = _inverse_axis(p1, freq.origin1, freq.delta1, freq.n1, t1)
    idx2, th2, a2, w2 = _inverse_axis(p2, freq.origin2, freq.delta2, freq.n2, t2)
    v = _gather_axis(np.asarray(values, dtype=float), idx1, -3)
    v = _gather_axis(v, idx2, -2)
    return two_sided_sum(v, th1, th2, axes, amp1=a1, amp2=a2, weight=w1 * w2)


def qolct_inverse(F: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                  axes: AxisPair = STANDARD_AXES, time_grid: GridGeometry | None = None
                  ) -> SampledSignal:
    if time_grid is None:
        raise ValueError("time_grid is required")
    vals = qolct_inverse_values(F.values, F.geometry, p1, p2, axes,
                                time_grid.axis1(), time_grid.axis2())
    return SampledSignal(time_grid, vals)


# ---------------------------------------------------------------- norms and checks

def _use_fast(geom: GridGeometry, freq: GridGeometry, p1, p2, axes: AxisPair) -> bool:
    return (axes.is_standard and not p1.degenerate and not p2.degenerate
            and is_commensurate(geom, freq, scale=(p1.b, p2.b)))


def qolct_module_norm(f: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                      axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None,
                      moment: tuple[int, float] | None = None) -> float:
    """``||O{f}||_{2,Q}`` from the four component transforms.

    With ``moment=(k, scale)`` the integrand is weighted by ``(scale * u_k)^2``.
    """
    freq = freq_grid or qolct_freq_grid(f.geometry, p1, p2)
    parts = np.zeros((4,) + f.geometry.shape + (4,))
    for m, comp in enumerate(component_split(f)):
        parts[m, ..., 0] = comp
    if _use_fast(f.geometry, freq, p1, p2, axes):
        spec = qolct_fast_values(parts, f.geometry, p1, p2, freq.axis1(), freq.axis2())
    else:
        spec = qolct_values(parts, f.geometry, p1, p2, axes, freq.axis1(), freq.axis2())
    dens = qabs2(spec).sum(axis=0)
    if moment is not None:
        k, scale = moment
        u1, u2 = freq.mesh()
        dens = dens * (scale * (u1 if k == 1 else u2)) ** 2
    return math.sqrt(float(dens.sum()) * freq.cell)


def qolct_plancherel_check(f: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                           axes: AxisPair = STANDARD_AXES,
                           freq_grid: GridGeometry | None = None) -> tuple[float, float]:
    """``(||O{f}||_{2,Q}, |f|_{2,Q})``; the two agree for every unimodular parameter set."""
    if p1.degenerate or p2.degenerate:
        raise BranchError("Plancherel check is stated for b1*b2 != 0")
    return qolct_module_norm(f, p1, p2, axes, freq_grid), lp_norm(f, 2)


@dataclass(frozen=True)
class RelationReport:
    """Pointwise comparison of the QOLCT against phase factors around the QLCT."""

    max_deviation: float
    max_magnitude: float
    t_eval: tuple[float, float]
    p1: OffsetParams
    p2: OffsetParams

    @property
    def relative_deviation(self) -> float:
        return self.max_deviation / self.max_magnitude if self.max_magnitude else 0.0


def qolct_from_qlct_relation(f: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                             axes: AxisPair = STANDARD_AXES,
                             freq_grid: GridGeometry | None = None,
                             t_eval: tuple[float, float] = (0.0, 0.0)) -> RelationReport:
    """Evaluate both sides of the QOLCT/QLCT phase relation and report the gap.

    The relation's outer phases contain the time variable ``t`` even though
    ``t`` is integrated out on both sides; it is evaluated at ``t_eval``. The
    factors are applied literally, including the right-axis unit on the
    ``d1 tau1^2 / (2 b1)`` phase. Nothing is asserted.
    """
    if p1.degenerate or p2.degenerate:
        raise BranchError("relation is stated for b1*b2 != 0")
    freq = freq_grid or qolct_freq_grid(f.geometry, p1, p2)
    lhs = qolct_forward(f, p1, p2, axes, freq).values
    core = qlct_forward(f, p1, p2, axes, freq).values
    u1, u2 = freq.axis1(), freq.axis2()
    t1, t2 = t_eval
    lam, mu = axes.left, axes.right
    left = qmul(axis_exp_array(lam, 2 * t1 * p1.tau - 2 * u1 * (p1.d * p1.tau - p1.b * p1.eta)),
                axis_exp(mu, p1.d * p1.tau ** 2 / (2 * p1.b)).to_array())
    right = qmul(axis_exp(mu, p2.d * p2.tau ** 2 / (2 * p2.b)).to_array(),
                 axis_exp_array(mu, 2 * t2 * p2.tau - 2 * u2 * (p2.d * p2.tau - p2.b * p2.eta)))
    rhs = qmul(qmul(left[:, None, :], core), right[None, :, :])
    dev = float(np.sqrt(qabs2(lhs - rhs)).max())
    mag = float(np.sqrt(qabs2(lhs)).max())
    return RelationReport(dev, mag, (float(t1), float(t2)), p1, p2)
