"""Uniformly sampled 2D quaternion signals and their Riemann-sum integrals.

A signal lives on a :class:`GridGeometry`: sample ``(k1, k2)`` sits at
``(origin1 + k1*delta1, origin2 + k2*delta2)`` and every integral is a plain
sum weighted by ``delta1*delta2``. Samples outside the grid read as zero.

The correlation product ``h(t, s) = f(t + s/2) conj(g(t - s/2))`` is sampled
on a lag grid with spacing ``2*delta`` so that both arguments always land on
time samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import FormatError, GeometryMismatchError, QuaternionDomainError
from .quaternion import Quaternion, as_qarray, qabs, qabs2, qconj, qmul

__all__ = [
    "GridGeometry",
    "SampledSignal",
    "Spectrum",
    "lp_norm",
    "inner_product",
    "lag_geometry",
    "correlation_product",
    "lag_product_values",
    "component_split",
    "recombine",
    "zero_pad",
    "write_qgrid",
    "read_qgrid",
]


@dataclass(frozen=True)
class GridGeometry:
    n1: int
    n2: int
    delta1: float
    delta2: float
    origin1: float = 0.0
    origin2: float = 0.0

    def __post_init__(self):
        if int(self.n1) != self.n1 or int(self.n2) != self.n2:
            raise ValueError("sample counts must be integers")
        if self.n1 < 2 or self.n2 < 2:
            raise ValueError(f"need at least 2 samples per axis, got {self.n1}x{self.n2}")
        if not (self.delta1 > 0 and self.delta2 > 0):
            raise ValueError("sample spacing must be positive")

    @classmethod
    def centered(cls, n1: int, half_width: float, n2: int | None = None,
                 half_width2: float | None = None) -> "GridGeometry":
        """Grid on ``[-half_width, half_width)`` per axis with sample 0 on the origin lattice.

        Uses ``delta = 2*half_width/n`` and ``origin = -half_width``, so for even
        ``n`` the point ``t = 0`` is sample ``n/2``.
        """
        n2 = n1 if n2 is None else n2
        half_width2 = half_width if half_width2 is None else half_width2
        d1 = 2.0 * half_width / n1
        d2 = 2.0 * half_width2 / n2
        return cls(n1, n2, d1, d2, -half_width, -half_width2)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def cell(self) -> float:
        """Quadrature weight of a single sample."""
        return self.delta1 * self.delta2

    def axis1(self) -> np.ndarray:
        return self.origin1 + np.arange(self.n1) * self.delta1

    def axis2(self) -> np.ndarray:
        return self.origin2 + np.arange(self.n2) * self.delta2

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.axis1(), self.axis2(), indexing="ij")

    def coordinate(self, k1: int, k2: int) -> tuple[float, float]:
        return (self.origin1 + k1 * self.delta1, self.origin2 + k2 * self.delta2)

    def nearest_index(self, x1, x2):
        """Nearest sample indices for coordinates, with -1 marking points off the grid."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        k1 = np.rint((x1 - self.origin1) / self.delta1).astype(int)
        k2 = np.rint((x2 - self.origin2) / self.delta2).astype(int)
        k1 = np.where((k1 >= 0) & (k1 < self.n1), k1, -1)
        k2 = np.where((k2 >= 0) & (k2 < self.n2), k2, -1)
        return k1, k2

    def same_as(self, other: "GridGeometry") -> bool:
        return (self.n1, self.n2) == (other.n1, other.n2) and all(
            math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)
            for a, b in ((self.delta1, other.delta1), (self.delta2, other.delta2),
                         (self.origin1, other.origin1), (self.origin2, other.origin2)))


@dataclass(frozen=True, eq=False)
class SampledSignal:
    geometry: GridGeometry
    values: np.ndarray = field(repr=False)

    header_tag = "QGRID"

    def __post_init__(self):
        v = as_qarray(self.values).astype(float, copy=True)
        if v.shape != (self.geometry.n1, self.geometry.n2, 4):
            raise GeometryMismatchError(
                f"values shape {v.shape} does not match geometry {self.geometry.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def zeros(cls, geometry: GridGeometry):
        return cls(geometry, np.zeros(geometry.shape + (4,)))

    @classmethod
    def from_function(cls, geometry: GridGeometry, func):
        """Sample ``func(t1, t2)`` (returning a (..., 4) array or real array) on the grid."""
        t1, t2 = geometry.mesh()
        v = np.asarray(func(t1, t2), dtype=float)
        if v.shape == geometry.shape:
            v = np.stack([v, np.zeros_like(v), np.zeros_like(v), np.zeros_like(v)], axis=-1)
        return cls(geometry, v)

    def with_values(self, values):
        return type(self)(self.geometry, values)

    def __getitem__(self, idx) -> Quaternion:
        return Quaternion.from_array(self.values[idx])

    def scaled(self, c: float):
        return self.with_values(c * self.values)

    def __add__(self, other):
        _require_same_grid(self, other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other):
        _require_same_grid(self, other)
        return self.with_values(self.values - other.values)

    def left_mul(self, q):
        """``q * f(t)`` for a constant quaternion ``q``."""
        return self.with_values(qmul(as_qarray(q), self.values))

    def right_mul(self, q):
        return self.with_values(qmul(self.values, as_qarray(q)))

    def modulus(self) -> np.ndarray:
        return qabs(self.values)


class Spectrum(SampledSignal):
    """A quaternion grid over the frequency variable ``u = (u1, u2)``."""

    header_tag = "QGRID-FREQ"


def _require_same_grid(f: SampledSignal, g: SampledSignal) -> None:
    if not f.geometry.same_as(g.geometry):
        raise GeometryMismatchError(f"grids differ: {f.geometry} vs {g.geometry}")


def lp_norm(f: SampledSignal, p: float = 2.0) -> float:
    """``(sum |f|^p dt)^(1/p)``; ``p = inf`` gives the sup norm."""
    if f.values.size == 0:
        raise QuaternionDomainError("empty signal")
    if p < 1:
        raise ValueError("p must be >= 1")
    mag = qabs(f.values)
    if math.isinf(p):
        return float(mag.max())
    return float((np.sum(mag ** p) * f.geometry.cell) ** (1.0 / p))


def inner_product(f: SampledSignal, g: SampledSignal) -> Quaternion:
    """``<f, g> = sum f(t) conj(g(t)) dt``."""
    _require_same_grid(f, g)
    prod = qmul(f.values, qconj(g.values))
    return Quaternion.from_array(prod.sum(axis=(0, 1)) * f.geometry.cell)


def lag_geometry(geometry: GridGeometry, parity: tuple[int, int] = (0, 0)) -> GridGeometry:
    """Lag grid for the correlation product.

    ``2n`` lags per axis with spacing ``2*delta``. For a time point at an
    integer sample (parity 0) the lags are ``2j*delta``, ``j = -n..n-1``; for a
    time point halfway between samples (parity 1) they shift to ``(2j+1)*delta``.
    """
    n1, n2 = geometry.n1, geometry.n2
    return GridGeometry(
        2 * n1, 2 * n2, 2 * geometry.delta1, 2 * geometry.delta2,
        (parity[0] - 2 * n1) * geometry.delta1,
        (parity[1] - 2 * n2) * geometry.delta2,
    )


def _lag_indices(n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Time indices of ``t + s/2`` and ``t - s/2`` for half-index ``m`` (t = m*delta/2)."""
    r = m % 2
    base = (m - r) // 2
    j = np.arange(-n, n)
    return base + j + r, base - j


def lag_product_values(fv: np.ndarray, gv: np.ndarray, m1: int, m2: int) -> np.ndarray:
    """Correlation product samples on the lag grid for half-indices ``(m1, m2)``.

    ``fv``/``gv`` are (n1, n2, 4) arrays. The time point is
    ``origin + (m1, m2) * delta / 2``; out-of-grid arguments read as zero.
    """
    n1, n2 = fv.shape[:2]
    plus1, minus1 = _lag_indices(n1, m1)
    plus2, minus2 = _lag_indices(n2, m2)
    fp = _gather(fv, plus1, plus2)
    gm = _gather(gv, minus1, minus2)
    return qmul(fp, qconj(gm))


def _gather(v: np.ndarray, idx1: np.ndarray, idx2: np.ndarray) -> np.ndarray:
    n1, n2 = v.shape[:2]
    ok1 = (idx1 >= 0) & (idx1 < n1)
    ok2 = (idx2 >= 0) & (idx2 < n2)
    out = v[np.clip(idx1, 0, n1 - 1)][:, np.clip(idx2, 0, n2 - 1)]
    mask = ok1[:, None] & ok2[None, :]
    return out * mask[..., None]


def correlation_product(f: SampledSignal, g: SampledSignal, t_index) -> SampledSignal:
    """``s -> f(t + s/2) conj(g(t - s/2))`` at time sample ``t_index`` over the lag grid."""
    _require_same_grid(f, g)
    k1, k2 = t_index
    vals = lag_product_values(f.values, g.values, 2 * k1, 2 * k2)
    return SampledSignal(lag_geometry(f.geometry), vals)


def component_split(f: SampledSignal) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four real component grids ``f0, f1, f2, f3``."""
    v = f.values
    return tuple(np.array(v[..., m]) for m in range(4))


def recombine(geometry: GridGeometry, parts, cls=SampledSignal) -> SampledSignal:
    return cls(geometry, np.stack([np.asarray(p, dtype=float) for p in parts], axis=-1))


def zero_pad(f: SampledSignal, pad1: int, pad2: int | None = None) -> SampledSignal:
    """Extend the grid by ``pad`` zero samples on every side."""
    pad2 = pad1 if pad2 is None else pad2
    g = f.geometry
    geom = GridGeometry(g.n1 + 2 * pad1, g.n2 + 2 * pad2, g.delta1, g.delta2,
                        g.origin1 - pad1 * g.delta1, g.origin2 - pad2 * g.delta2)
    v = np.pad(f.values, ((pad1, pad1), (pad2, pad2), (0, 0)))
    return type(f)(geom, v)


# ---------------------------------------------------------------- QGRID text format

def write_qgrid(f: SampledSignal, path) -> None:
    """Write ``f`` as a QGRID (or QGRID-FREQ for spectra) text file.

    Floats are written with ``repr`` so a read returns bit-identical values.
    """
    g = f.geometry
    lines = [f"{f.header_tag} {g.n1} {g.n2} {g.delta1!r} {g.delta2!r} {g.origin1!r} {g.origin2!r}"]
    for row in f.values.reshape(-1, 4):
        lines.append(" ".join(repr(float(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_qgrid(path) -> SampledSignal:
    text = Path(path).read_text().split("\n")
    header = text[0].split()
    if len(header) != 7 or header[0] not in ("QGRID", "QGRID-FREQ"):
        raise FormatError(f"{path}: bad QGRID header {text[0]!r}")
    try:
        n1, n2 = int(header[1]), int(header[2])
        d1, d2, o1, o2 = (float(x) for x in header[3:])
    except ValueError as exc:
        raise FormatError(f"{path}: bad QGRID header {text[0]!r}") from exc
    body = [ln for ln in text[1:] if ln.strip()]
    if len(body) != n1 * n2:
        raise FormatError(f"{path}: expected {n1 * n2} sample lines, found {len(body)}")
    try:
        vals = np.array([[float(x) for x in ln.split()] for ln in body])
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric sample") from exc
    if vals.shape != (n1 * n2, 4):
        raise FormatError(f"{path}: every sample line needs four floats")
    cls = Spectrum if header[0] == "QGRID-FREQ" else SampledSignal
    return cls(GridGeometry(n1, n2, d1, d2, o1, o2), vals.reshape(n1, n2, 4))
