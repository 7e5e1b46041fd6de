"""Test signals with closed-form descriptors.

:class:`Gaussian` and :class:`Chirp` can be evaluated at arbitrary points,
which the Poisson checks need for exact lattice translates, and the
Gaussian also carries its analytic energy and QFT.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import GridGeometry, SampledSignal
from .quaternion import AXIS_I, AXIS_J, Quaternion, axis_exp_array, qmul

__all__ = ["Gaussian", "Chirp", "GENERATOR_KINDS", "generate", "delta", "random_smooth",
           "random_smooth_components"]

GENERATOR_KINDS = ("gaussian", "chirp", "delta", "shifted-gaussian")


@dataclass(frozen=True)
class Gaussian:
    """``A exp(-((t1-c1)^2/(2 s1^2) + (t2-c2)^2/(2 s2^2)))`` with quaternion amplitude ``A``."""

    amplitude: Quaternion = Quaternion(1.0)
    center: tuple[float, float] = (0.0, 0.0)
    sigma: tuple[float, float] = (1.0, 1.0)

    def __post_init__(self):
        if min(self.sigma) <= 0:
            raise ValueError("sigma must be positive")

    def envelope(self, x1, x2) -> np.ndarray:
        (c1, c2), (s1, s2) = self.center, self.sigma
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        return np.exp(-((x1 - c1) ** 2 / (2 * s1 * s1) + (x2 - c2) ** 2 / (2 * s2 * s2)))

    def evaluate(self, x1, x2) -> np.ndarray:
        env = self.envelope(x1, x2)
        return env[..., None] * self.amplitude.to_array()

    def sample(self, geometry: GridGeometry) -> SampledSignal:
        x1, x2 = geometry.mesh()
        return SampledSignal(geometry, self.evaluate(x1, x2))

    def energy(self) -> float:
        """``|f|_{2,Q}^2 = |A|^2 pi s1 s2``."""
        return abs(self.amplitude) ** 2 * math.pi * self.sigma[0] * self.sigma[1]

    def scaled(self, c: float) -> "Gaussian":
        return Gaussian(self.amplitude * c, self.center, self.sigma)

    def cyclic_qft(self, xi1, xi2) -> np.ndarray:
        """``sum exp(-2 pi i s1 xi1) f(s) exp(-2 pi j s2 xi2) ds`` in closed form.

        Write ``A = Aa + Ab j`` with ``Aa, Ab`` in span(1, i). The left
        exponential commutes with ``Aa`` and conjugates past ``Ab j``, so
        ``f^(xi) = Aa G1(xi1) G2(xi2) + Ab j G1(-xi1) G2(xi2)`` where ``G1`` is
        the i-valued and ``G2`` the j-valued 1D Gaussian transform.
        """
        xi1 = np.asarray(xi1, dtype=float)
        xi2 = np.asarray(xi2, dtype=float)
        (c1, c2), (s1, s2) = self.center, self.sigma
        A = self.amplitude
        Aa = np.array([A.q0, A.q1, 0.0, 0.0])
        Abj = np.array([0.0, 0.0, A.q2, A.q3])  # (A.q2 + A.q3 i) j
        mag1 = s1 * math.sqrt(2 * math.pi) * np.exp(-2 * math.pi ** 2 * s1 ** 2 * xi1 ** 2)
        mag2 = s2 * math.sqrt(2 * math.pi) * np.exp(-2 * math.pi ** 2 * s2 ** 2 * xi2 ** 2)
        g1p = axis_exp_array(AXIS_I, -2 * math.pi * c1 * xi1) * mag1[..., None]
        g1m = axis_exp_array(AXIS_I, 2 * math.pi * c1 * xi1) * mag1[..., None]
        g2 = axis_exp_array(AXIS_J, -2 * math.pi * c2 * xi2) * mag2[..., None]
        return qmul(qmul(Aa, g1p) + qmul(Abj, g1m), g2)

    def angular_qft(self, u1, u2) -> np.ndarray:
        """QFT with kernel ``exp(-i u1 t1)``, ``exp(-j u2 t2)``: the cyclic one at ``u/(2 pi)``."""
        return self.cyclic_qft(np.asarray(u1) / (2 * math.pi), np.asarray(u2) / (2 * math.pi))


@dataclass(frozen=True)
class Chirp:
    """``exp(i c t1^2/2) env(t) exp(j c t2^2/2)`` for a real Gaussian envelope."""

    rate: float = 1.0
    envelope: Gaussian = Gaussian()

    def __post_init__(self):
        a = self.envelope.amplitude
        if a.q1 or a.q2 or a.q3:
            raise ValueError("chirp envelope must be real")

    def evaluate(self, x1, x2) -> np.ndarray:
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        env = self.envelope.envelope(x1, x2) * self.envelope.amplitude.q0
        left = axis_exp_array(AXIS_I, self.rate * x1 ** 2 / 2)
        right = axis_exp_array(AXIS_J, self.rate * x2 ** 2 / 2)
        return qmul(left * env[..., None], right)

    def sample(self, geometry: GridGeometry) -> SampledSignal:
        x1, x2 = geometry.mesh()
        return SampledSignal(geometry, self.evaluate(x1, x2))

    def energy(self) -> float:
        return self.envelope.energy()


def delta(geometry: GridGeometry, at: tuple[float, float] = (0.0, 0.0)) -> SampledSignal:
    """Single cell of weight ``1/dt`` at the sample nearest ``at``."""
    k1, k2 = geometry.nearest_index(*at)
    v = np.zeros(geometry.shape + (4,))
    v[k1, k2, 0] = 1.0 / geometry.cell
    return SampledSignal(geometry, v)


def _descriptor(kind: str, sigma: float, rate: float, center, amplitude):
    amp = amplitude if amplitude is not None else Quaternion(1.0)
    if kind == "gaussian":
        return Gaussian(amp, tuple(center or (0.0, 0.0)), (sigma, sigma))
    if kind == "shifted-gaussian":
        return Gaussian(amp, tuple(center or (1.0, -0.5)), (sigma, sigma))
    if kind == "chirp":
        return Chirp(rate, Gaussian(Quaternion(amp.q0), tuple(center or (0.0, 0.0)), (sigma, sigma)))
    raise ValueError(f"unknown generator kind {kind!r}; expected one of {GENERATOR_KINDS}")


def generate(kind: str, geometry: GridGeometry, sigma: float = 1.0, rate: float = 1.0,
             center: tuple[float, float] | None = None,
             amplitude: Quaternion | None = None) -> tuple[SampledSignal, object]:
    """Sample a named test signal; returns ``(signal, descriptor)``.

    The descriptor is the analytic :class:`Gaussian`/:class:`Chirp`, or
    ``None`` for ``delta``.
    """
    if kind == "delta":
        return delta(geometry, tuple(center or (0.0, 0.0))), None
    desc = _descriptor(kind, sigma, rate, center, amplitude)
    return desc.sample(geometry), desc


def random_smooth_components(seed: int, count: int = 3, spread: float = 1.5,
                             sigma_range: tuple[float, float] = (0.6, 1.2)) -> list[Gaussian]:
    """The Gaussian terms behind :func:`random_smooth` for ``seed``."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        amp = Quaternion.from_array(rng.standard_normal(4))
        c = tuple(float(x) for x in rng.uniform(-spread, spread, 2))
        s = tuple(float(x) for x in rng.uniform(*sigma_range, 2))
        out.append(Gaussian(amp, c, s))
    return out


def random_smooth(seed: int, geometry: GridGeometry, count: int = 3) -> SampledSignal:
    """Sum of ``count`` Gaussians with random quaternion amplitudes, centres and widths."""
    x1, x2 = geometry.mesh()
    vals = sum(gs.evaluate(x1, x2) for gs in random_smooth_components(seed, count))
    return SampledSignal(geometry, vals)
