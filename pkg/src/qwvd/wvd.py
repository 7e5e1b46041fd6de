"""Wigner-Ville distribution associated with the QOLCT.

For each time point ``t`` the distribution is the QOLCT, in the lag
variable ``s``, of the correlation product ``h(t, s) = f(t + s/2) conj(g(t - s/2))``:

    W(t, u) = sum_s K1(s1, u1) h(t, s) K2(s2, u2) ds,    ds = 4 delta1 delta2.

Slices over ``t`` are independent, so everything here is evaluated one
time-row at a time (:func:`iter_wvd_rows`) and norms are accumulated in a
fixed order. A full :class:`WvdGrid` holds ``n1*n2*m1*m2`` quaternions; build
it only when the whole array is wanted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from .errors import BranchError, FastPathError, GeometryMismatchError, QuaternionDomainError
from .grid import (GridGeometry, SampledSignal, Spectrum, lag_geometry, lag_product_values,
                   lp_norm, read_qgrid, write_qgrid)
from .qft import STANDARD_AXES, AxisPair, _axis_dft, is_commensurate
from .qolct import (OffsetParams, qolct_fast_values, qolct_freq_grid, qolct_inverse_values,
                    qolct_values)
from .quaternion import qabs2, qmul

__all__ = [
    "WvdGrid",
    "wvd_freq_grid",
    "refined_time_geometry",
    "iter_wvd_rows",
    "wvd_qolct",
    "wvd_qlct",
    "wvd_via_qft",
    "wvd_inverse",
    "wvd_component_energy",
    "wvd_component_sums",
    "wvd_plancherel_check",
    "wvd_lp_functional",
    "lag_moment",
    "export_wvd",
    "load_wvd",
]


@dataclass(frozen=True, eq=False)
class WvdGrid:
    """``W(t, u)`` on a time grid times a frequency grid.

    ``refined`` marks a time grid at half the signal spacing (``2n - 1``
    samples per axis), which is what :func:`wvd_inverse` consumes.
    """

    time_geometry: GridGeometry
    freq_geometry: GridGeometry
    values: np.ndarray = field(repr=False)
    signal_geometry: GridGeometry | None = None
    refined: bool = False

    def __post_init__(self):
        shape = self.time_geometry.shape + self.freq_geometry.shape + (4,)
        if self.values.shape != shape:
            raise GeometryMismatchError(f"values shape {self.values.shape} != {shape}")

    def slice(self, k1: int, k2: int) -> Spectrum:
        return Spectrum(self.freq_geometry, self.values[k1, k2])

    def squared_norm(self) -> float:
        """``sum |W|_Q^2 du dt`` (plain modulus, not the component module norm)."""
        return float(qabs2(self.values).sum()) * self.time_geometry.cell * self.freq_geometry.cell


def wvd_freq_grid(geometry: GridGeometry, p1: OffsetParams, p2: OffsetParams) -> GridGeometry:
    """Frequency grid matched to the lag grid of ``geometry``.

    For ``b != 0`` this is one full DFT period of the lag grid. A ``b = 0``
    axis reads the lag product at ``s = d (u - tau)``; its grid is built on the
    lag lattice at spacing ``delta`` so that lags of both parities (integer
    and half-step time points) are hit exactly.
    """
    grid = qolct_freq_grid(lag_geometry(geometry), p1, p2)
    if not (p1.degenerate or p2.degenerate):
        return grid
    n1, n2 = geometry.shape
    d1, d2 = geometry.delta1, geometry.delta2
    fine = qolct_freq_grid(GridGeometry(4 * n1, 4 * n2, d1, d2, -2 * n1 * d1, -2 * n2 * d2), p1, p2)
    ax1 = fine if p1.degenerate else grid
    ax2 = fine if p2.degenerate else grid
    return GridGeometry(ax1.n1, ax2.n2, ax1.delta1, ax2.delta2, ax1.origin1, ax2.origin2)


def refined_time_geometry(geometry: GridGeometry) -> GridGeometry:
    return GridGeometry(2 * geometry.n1 - 1, 2 * geometry.n2 - 1, geometry.delta1 / 2,
                        geometry.delta2 / 2, geometry.origin1, geometry.origin2)


def _check_pair(f: SampledSignal, g: SampledSignal) -> None:
    if not f.geometry.same_as(g.geometry):
        raise GeometryMismatchError("f and g must share a grid")


def _pick_transform(method: str, lag: GridGeometry, freq: GridGeometry, p1, p2,
                    axes: AxisPair, offset: bool) -> Callable:
    fast_ok = (axes.is_standard and not p1.degenerate and not p2.degenerate and offset
               and is_commensurate(lag, freq, scale=(p1.b, p2.b)))
    if method == "fast" or (method == "auto" and fast_ok):
        if not axes.is_standard:
            raise FastPathError("fast WVD path supports axes (i, j) only; use wvd_qolct")
        if p1.degenerate or p2.degenerate:
            raise BranchError("fast WVD path needs b1*b2 != 0")
        return lambda v, lg: qolct_fast_values(v, lg, p1, p2, freq.axis1(), freq.axis2())
    if method not in ("direct", "auto"):
        raise ValueError(f"unknown method {method!r}")
    return lambda v, lg: qolct_values(v, lg, p1, p2, axes, freq.axis1(), freq.axis2(),
                                      offset=offset)


def _lag_rows(f: SampledSignal, g: SampledSignal, refine: bool):
    """Yield ``(row index, half-index m1, lag geometry per parity, lag values)`` per time row."""
    n1, n2 = f.geometry.shape
    if refine:
        m_range1, m_range2 = range(2 * n1 - 1), range(2 * n2 - 1)
    else:
        m_range1, m_range2 = range(0, 2 * n1 - 1, 2), range(0, 2 * n2 - 1, 2)
    for row, m1 in enumerate(m_range1):
        batch = np.stack([lag_product_values(f.values, g.values, m1, m2) for m2 in m_range2])
        parities = [(m1 % 2, m2 % 2) for m2 in m_range2]
        yield row, batch, parities


def iter_wvd_rows(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                  axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None,
                  refine: bool = False, method: str = "auto", offset: bool = True,
                  components: bool = False) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Stream the distribution one time-row at a time.

    Yields ``(row, lag_values, W_row)`` where ``W_row`` has shape
    ``(n_t2, m1, m2, 4)``. With ``components=True`` the lag product is split
    into its four real components first and ``W_row`` gains a leading axis of
    length 4 holding the transform of each component.
    """
    _check_pair(f, g)
    geo = f.geometry
    freq = freq_grid or wvd_freq_grid(geo, p1, p2)
    base_lag = lag_geometry(geo)
    transform = _pick_transform(method, base_lag, freq, p1, p2, axes, offset)
    for row, batch, parities in _lag_rows(f, g, refine):
        if components:
            work = np.zeros((4,) + batch.shape)
            for m in range(4):
                work[m, ..., 0] = batch[..., m]
        else:
            work = batch
        if all(pp == parities[0] for pp in parities):
            out = transform(work, lag_geometry(geo, parities[0]))
        else:
            # parity alternates along t2 on the refined grid: transform each class
            out = np.empty(work.shape[:-3] + freq.shape + (4,))
            for par in sorted(set(parities)):
                sel = np.array([pp == par for pp in parities])
                out[..., sel, :, :, :] = transform(work[..., sel, :, :, :], lag_geometry(geo, par))
        yield row, batch, out


def _assemble(f, g, p1, p2, axes, freq_grid, refine, method, offset) -> WvdGrid:
    geo = f.geometry
    freq = freq_grid or wvd_freq_grid(geo, p1, p2)
    tgeo = refined_time_geometry(geo) if refine else geo
    vals = np.empty(tgeo.shape + freq.shape + (4,))
    for row, _, out in iter_wvd_rows(f, g, p1, p2, axes, freq, refine, method, offset):
        vals[row] = out
    return WvdGrid(tgeo, freq, vals, geo, refine)


def wvd_qolct(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
              axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None,
              refine: bool = False) -> WvdGrid:
    """WVD-QOLCT by direct kernel summation over the lag grid (any axes, all branches)."""
    return _assemble(f, g, p1, p2, axes, freq_grid, refine, "direct", True)


def wvd_qlct(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
             axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None,
             refine: bool = False) -> WvdGrid:
    """Same pipeline with offset-free LCT kernels (offsets in the parameters are ignored)."""
    q1, q2 = p1.without_offset(), p2.without_offset()
    return _assemble(f, g, q1, q2, axes, freq_grid, refine, "direct", False)


def wvd_via_qft(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                freq_grid: GridGeometry | None = None, refine: bool = False) -> WvdGrid:
    """WVD through the chirp-premultiplied lag product and the (i, j) FFT path."""
    if p1.degenerate or p2.degenerate:
        raise BranchError("wvd_via_qft needs b1*b2 != 0")
    return _assemble(f, g, p1, p2, STANDARD_AXES, freq_grid, refine, "fast", True)


def _lag_coords(geo: GridGeometry, m: int, n: int, delta: float, axis: int):
    """Valid (v, eps) index pairs with v + eps = m, and their lag coordinates v - eps."""
    v = np.arange(max(0, m - n + 1), min(n - 1, m) + 1)
    eps = m - v
    return v, eps, (v - eps) * delta


def wvd_inverse(W: WvdGrid, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                axes: AxisPair = STANDARD_AXES, kernel_argument: str = "lag") -> SampledSignal:
    """Recover ``f`` from its distribution against a known window ``g``.

    ``f(v) |g|^2 = sum_eps sum_u conj K1(., u1) W((v+eps)/2, u) conj K2(., u2) g(eps) du deps``.

    ``W`` must be on the refined time grid so that ``(v + eps)/2`` is a
    sample for every pair of time samples. The kernels are evaluated at the
    lag ``v - eps`` (``kernel_argument="lag"``), which is where the QOLCT
    inversion in ``s`` places them. ``kernel_argument="midpoint"`` evaluates
    them at ``(v + eps)/2`` instead and is kept only for comparison; it does
    not reconstruct ``f``.
    """
    if not W.refined or W.signal_geometry is None:
        raise ValueError("wvd_inverse needs a distribution computed with refine=True")
    geo = W.signal_geometry
    if not geo.same_as(g.geometry):
        raise GeometryMismatchError("g must live on the signal grid of W")
    energy = lp_norm(g, 2) ** 2
    if energy == 0.0:
        raise QuaternionDomainError("window g has zero energy")
    if kernel_argument not in ("lag", "midpoint"):
        raise ValueError(f"unknown kernel_argument {kernel_argument!r}")
    n1, n2 = geo.shape
    acc = np.zeros((n1, n2, 4))
    tg = W.time_geometry
    for m1 in range(2 * n1 - 1):
        v1, e1, s1 = _lag_coords(geo, m1, n1, geo.delta1, 0)
        for m2 in range(2 * n2 - 1):
            v2, e2, s2 = _lag_coords(geo, m2, n2, geo.delta2, 1)
            if kernel_argument == "midpoint":
                c1 = np.full(len(v1), tg.origin1 + m1 * tg.delta1)
                c2 = np.full(len(v2), tg.origin2 + m2 * tg.delta2)
            else:
                c1, c2 = s1, s2
            h = qolct_inverse_values(W.values[m1, m2], W.freq_geometry, p1, p2, axes, c1, c2)
            acc[np.ix_(v1, v2)] += qmul(h, g.values[np.ix_(e1, e2)])
    return SampledSignal(geo, acc * geo.cell / energy)


# ---------------------------------------------------------------- streamed functionals

def _component_density_complex(batch: np.ndarray, lag: GridGeometry, p1: OffsetParams,
                               p2: OffsetParams, freq: GridGeometry) -> np.ndarray:
    """``sum_m |O{h_m}(u)|_Q^2`` for axes (i, j) via complex FFTs; shape (..., m1, m2).

    For a real component ``x`` the kernels commute with ``x`` and
    ``K1 x K2 = x (Re K1 Re K2, Im K1 Re K2, Re K1 Im K2, Im K1 Im K2)``,
    whose squared modulus sums to ``(|P|^2 + |M|^2)/2`` with ``P`` and ``M`` the
    complex transforms against ``k1 k2`` and ``k1 conj(k2)``. The post-phases
    and the root phase have unit modulus and drop out.
    """
    t1, t2 = lag.axis1(), lag.axis2()
    c1 = (p1.a * t1 * t1 + 2 * t1 * p1.tau) / (2 * p1.b)
    c2 = (p2.a * t2 * t2 + 2 * t2 * p2.tau) / (2 * p2.b)
    v1 = freq.axis1() / p1.b
    v2 = freq.axis2() / p2.b
    plus = np.exp(1j * (c1[:, None] + c2[None, :]))
    minus = np.exp(1j * (c1[:, None] - c2[None, :]))
    dens = 0.0
    for m in range(4):
        x = batch[..., m]
        a = _axis_dft(x * plus, -2, lag.origin1, lag.delta1, v1, +1)
        P = _axis_dft(a, -1, lag.origin2, lag.delta2, v2, +1)
        a = _axis_dft(x * minus, -2, lag.origin1, lag.delta1, v1, +1)
        M = _axis_dft(a, -1, lag.origin2, lag.delta2, v2, -1)
        dens = dens + 0.5 * (np.abs(P) ** 2 + np.abs(M) ** 2)
    amp = lag.cell / (2 * math.pi * math.sqrt(abs(p1.b * p2.b)))
    return dens * amp ** 2


def wvd_component_sums(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                       axes: AxisPair = STANDARD_AXES, freq_grid: GridGeometry | None = None,
                       method: str = "auto") -> tuple[float, float, float]:
    """``sum_t sum_u w(u) ||W(t, u)||_Q^2 du dt`` for ``w = 1, u1^2, u2^2`` in one pass.

    ``||.||_Q`` is the component module norm: the lag product is split into
    its four real components and each is transformed separately. With axes
    (i, j), ``b1 b2 != 0`` and a DFT-commensurate grid, ``method="auto"``
    evaluates the component moduli with complex FFTs; ``method="quaternion"``
    forces the quaternion pipeline.
    """
    geo = f.geometry
    freq = freq_grid or wvd_freq_grid(geo, p1, p2)
    u1, u2 = freq.mesh()
    w1, w2 = u1 ** 2, u2 ** 2
    lag = lag_geometry(geo)
    use_complex = (method == "auto" and axes.is_standard and not p1.degenerate
                   and not p2.degenerate and is_commensurate(lag, freq, scale=(p1.b, p2.b)))
    if method not in ("auto", "quaternion"):
        raise ValueError(f"unknown method {method!r}")
    e = m1 = m2 = 0.0
    if use_complex:
        _check_pair(f, g)
        rows = (_component_density_complex(batch, lag, p1, p2, freq).sum(axis=0)
                for _, batch, _ in _lag_rows(f, g, False))
    else:
        rows = (qabs2(out).sum(axis=0).sum(axis=0)
                for _, _, out in iter_wvd_rows(f, g, p1, p2, axes, freq, components=True))
    for dens in rows:
        e += float(dens.sum())
        m1 += float((dens * w1).sum())
        m2 += float((dens * w2).sum())
    scale = freq.cell * geo.cell
    return e * scale, m1 * scale, m2 * scale


def wvd_component_energy(f: SampledSignal, g: SampledSignal, p1: OffsetParams,
                         p2: OffsetParams, axes: AxisPair = STANDARD_AXES,
                         freq_grid: GridGeometry | None = None,
                         moment: tuple[int, float] | None = None) -> float:
    """``||W||_{2,Q}^2``, or the moment ``sum (scale*u_k)^2 ||W||_Q^2`` for ``moment=(k, scale)``."""
    e, m1, m2 = wvd_component_sums(f, g, p1, p2, axes, freq_grid)
    if moment is None:
        return e
    k, scale = moment
    return scale ** 2 * (m1 if k == 1 else m2)


def lag_moment(f: SampledSignal, g: SampledSignal, k: int | None = None) -> float:
    """``sum_t sum_s s_k^2 |h(t, s)|^2 ds dt``; ``k=None`` drops the weight."""
    _check_pair(f, g)
    geo = f.geometry
    lag = lag_geometry(geo)
    s1, s2 = lag.mesh()
    w = 1.0 if k is None else (s1 if k == 1 else s2) ** 2
    total = 0.0
    for _, batch, _ in _lag_rows(f, g, False):
        total += float((qabs2(batch) * w).sum())
    return total * lag.cell * geo.cell


def wvd_plancherel_check(f: SampledSignal, g: SampledSignal, p1: OffsetParams,
                         p2: OffsetParams, axes: AxisPair = STANDARD_AXES,
                         freq_grid: GridGeometry | None = None) -> tuple[float, float]:
    """``(||W||_{2,Q}, |f|_{2,Q} |g|_{2,Q})``; their squares are equal."""
    if p1.degenerate or p2.degenerate:
        raise BranchError("Plancherel check is stated for b1*b2 != 0")
    lhs = math.sqrt(wvd_component_energy(f, g, p1, p2, axes, freq_grid))
    return lhs, lp_norm(f, 2) * lp_norm(g, 2)


def wvd_lp_functional(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                      p_exp: float, axes: AxisPair = STANDARD_AXES,
                      freq_grid: GridGeometry | None = None) -> float:
    """``sum_t sum_u |W(t, u)|_Q^p du dt``."""
    geo = f.geometry
    freq = freq_grid or wvd_freq_grid(geo, p1, p2)
    total = 0.0
    for _, _, out in iter_wvd_rows(f, g, p1, p2, axes, freq):
        total += float((qabs2(out) ** (p_exp / 2.0)).sum())
    return total * freq.cell * geo.cell


# ---------------------------------------------------------------- export

def export_wvd(W: WvdGrid, directory) -> Path:
    """Write one QGRID-FREQ file per time sample plus ``manifest.txt``."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    tg = W.time_geometry
    lines = [f"WVD-MANIFEST {tg.n1} {tg.n2} {tg.delta1!r} {tg.delta2!r} "
             f"{tg.origin1!r} {tg.origin2!r} refined={int(W.refined)}"]
    if W.signal_geometry is not None:
        sg = W.signal_geometry
        lines.append(f"SIGNAL {sg.n1} {sg.n2} {sg.delta1!r} {sg.delta2!r} {sg.origin1!r} {sg.origin2!r}")
    for k1 in range(tg.n1):
        for k2 in range(tg.n2):
            name = f"slice_{k1:04d}_{k2:04d}.qgrid"
            write_qgrid(W.slice(k1, k2), d / name)
            t1, t2 = tg.coordinate(k1, k2)
            lines.append(f"{k1} {k2} {t1!r} {t2!r} {name}")
    path = d / "manifest.txt"
    path.write_text("\n".join(lines) + "\n")
    return path


def load_wvd(directory) -> WvdGrid:
    d = Path(directory)
    lines = [ln for ln in (d / "manifest.txt").read_text().splitlines() if ln.strip()]
    head = lines[0].split()
    tg = GridGeometry(int(head[1]), int(head[2]), *(float(x) for x in head[3:7]))
    refined = head[7] == "refined=1"
    sig = None
    body = lines[1:]
    if body and body[0].startswith("SIGNAL"):
        s = body[0].split()
        sig = GridGeometry(int(s[1]), int(s[2]), *(float(x) for x in s[3:7]))
        body = body[1:]
    vals = None
    freq = None
    for ln in body:
        k1, k2, _, _, name = ln.split()
        sl = read_qgrid(d / name)
        if vals is None:
            freq = sl.geometry
            vals = np.empty(tg.shape + freq.shape + (4,))
        vals[int(k1), int(k2)] = sl.values
    return WvdGrid(tg, freq, vals, sig, refined)
