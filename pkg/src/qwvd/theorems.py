"""Numerical checks for the uncertainty, summation and Lieb-type statements.

Inequalities come back as :class:`InequalityReport`, identities as
:class:`IdentityReport`. Reports flagged ``assertable=False`` document a
quantity whose stated constant is not expected to hold; they are recorded
but never fail a run.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BranchError
from .generators import Chirp, Gaussian
from .grid import GridGeometry, SampledSignal, lp_norm
from .qft import STANDARD_AXES, AxisPair
from .qolct import OffsetParams, qlct_forward, qolct_module_norm, qolct_values
from .quaternion import AXIS_I, AXIS_J, Quaternion, axis_exp_array, qabs, qabs2, qconj, qmul
from .wvd import lag_moment, wvd_component_sums, wvd_freq_grid, wvd_lp_functional

__all__ = [
    "InequalityReport",
    "IdentityReport",
    "LatticeTruncation",
    "heisenberg_qolct",
    "heisenberg_wvd",
    "heisenberg_wvd_pair",
    "poisson_qft_check",
    "poisson_wvd_check",
    "lieb_qlct_ratio",
    "lieb_wvd_functional",
    "format_record",
]

REPORT_TOL = 1e-9


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, OffsetParams):
        return v.format().replace(" ", ",")
    return str(v)


def format_record(fields: dict) -> str:
    """Flat ``key=value`` record, one line, keys in insertion order."""
    return " ".join(f"{k}={_fmt(v)}" for k, v in fields.items())


@dataclass(frozen=True)
class InequalityReport:
    """``lhs >= rhs`` (or ``<=`` per ``relation``) up to ``REPORT_TOL * max(|lhs|, |rhs|)``.

    ``gap`` is always ``lhs - rhs``.
    """

    name: str
    lhs: float
    rhs: float
    gap: float
    satisfied: bool
    context: dict = field(default_factory=dict)
    constant: float | None = None
    assertable: bool = True
    relation: str = ">="

    @classmethod
    def build(cls, name: str, lhs: float, rhs: float, context: dict | None = None,
              constant: float | None = None, assertable: bool = True,
              relation: str = ">=") -> "InequalityReport":
        if relation not in (">=", "<="):
            raise ValueError(f"unknown relation {relation!r}")
        lhs, rhs = float(lhs), float(rhs)
        gap = lhs - rhs
        tol = REPORT_TOL * max(abs(lhs), abs(rhs))
        ok = gap >= -tol if relation == ">=" else gap <= tol
        return cls(name, lhs, rhs, gap, ok, dict(context or {}), constant, assertable, relation)

    @property
    def passed(self) -> bool:
        return self.satisfied or not self.assertable

    def record(self) -> str:
        head = {"check": self.name, **self.context, "relation": self.relation,
                "lhs": self.lhs, "rhs": self.rhs,
                "gap": self.gap, "satisfied": self.satisfied}
        if self.constant is not None:
            head["constant"] = self.constant
        head["assertable"] = self.assertable
        return format_record(head)


@dataclass(frozen=True)
class IdentityReport:
    """``|lhs - rhs| <= tolerance * scale`` with ``scale = max(1, |rhs|)`` unless given."""

    name: str
    lhs: float
    rhs: float
    deviation: float
    tolerance: float
    passed: bool
    context: dict = field(default_factory=dict)
    assertable: bool = True

    @classmethod
    def build(cls, name: str, lhs, rhs, tolerance: float, context: dict | None = None,
              relative: bool = True, deviation: float | None = None,
              assertable: bool = True) -> "IdentityReport":
        lhs_f = float(np.max(np.abs(lhs))) if np.ndim(lhs) else float(lhs)
        rhs_f = float(np.max(np.abs(rhs))) if np.ndim(rhs) else float(rhs)
        if deviation is None:
            deviation = float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs))))
            if relative:
                deviation /= max(abs(rhs_f), 1e-300)
        ok = deviation <= tolerance
        return cls(name, lhs_f, rhs_f, float(deviation), tolerance, ok or not assertable,
                   dict(context or {}), assertable)

    def record(self) -> str:
        return format_record({"check": self.name, **self.context, "lhs": self.lhs,
                              "rhs": self.rhs, "deviation": self.deviation,
                              "tolerance": self.tolerance, "passed": self.passed,
                              "assertable": self.assertable})


@dataclass(frozen=True)
class LatticeTruncation:
    """Lattice sums over ``(k1, k2)`` in ``[-K, K]^2``."""

    K: int = 6

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be a positive integer")

    def indices(self) -> tuple[np.ndarray, np.ndarray]:
        k = np.arange(-self.K, self.K + 1)
        return np.meshgrid(k, k, indexing="ij")

    def doubled(self) -> "LatticeTruncation":
        return LatticeTruncation(2 * self.K)


# ---------------------------------------------------------------- Heisenberg

def _position_moment(f: SampledSignal, k: int) -> float:
    t1, t2 = f.geometry.mesh()
    t = t1 if k == 1 else t2
    return float((t * t * qabs2(f.values)).sum()) * f.geometry.cell


def _check_axis(k: int) -> None:
    if k not in (1, 2):
        raise ValueError("axis index k must be 1 or 2")


def heisenberg_qolct(f: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                     axes: AxisPair = STANDARD_AXES, k: int = 1,
                     freq_grid: GridGeometry | None = None) -> InequalityReport:
    """``|s_k f|^2 ||xi_k/(2 pi b_k) O{f}||^2 >= |f|^4 / (16 pi^2)``."""
    _check_axis(k)
    b = p1.b if k == 1 else p2.b
    if b == 0.0:
        raise BranchError("Heisenberg check needs b_k != 0")
    pos = _position_moment(f, k)
    freq = qolct_module_norm(f, p1, p2, axes, freq_grid, moment=(k, 1.0 / (2 * math.pi * b))) ** 2
    energy = lp_norm(f, 2) ** 2
    ctx = {"k": k, "p1": p1, "p2": p2, "axes": f"{axes.left.name}/{axes.right.name}"}
    return InequalityReport.build("heisenberg-qolct", pos * freq, energy ** 2 / (16 * math.pi ** 2), ctx)


def heisenberg_wvd_pair(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                        axes: AxisPair = STANDARD_AXES,
                        freq_grid: GridGeometry | None = None) -> tuple[InequalityReport, InequalityReport]:
    """Both ``k = 1, 2`` reports of the WVD uncertainty bound from one streamed pass."""
    if p1.degenerate or p2.degenerate:
        raise BranchError("Heisenberg check needs b1*b2 != 0")
    _, m1, m2 = wvd_component_sums(f, g, p1, p2, axes, freq_grid)
    rhs = (lp_norm(f, 2) ** 2 * lp_norm(g, 2) ** 2) ** 2 / (16 * math.pi ** 2)
    zero_window = rhs == 0.0
    out = []
    for k, m, b in ((1, m1, p1.b), (2, m2, p2.b)):
        lhs = lag_moment(f, g, k) * m / (2 * math.pi * b) ** 2
        ctx = {"k": k, "p1": p1, "p2": p2, "axes": f"{axes.left.name}/{axes.right.name}"}
        if zero_window:
            ctx["degenerate"] = True
        out.append(InequalityReport.build("heisenberg-wvd", lhs, rhs, ctx,
                                          assertable=not zero_window))
    return out[0], out[1]


def heisenberg_wvd(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                   axes: AxisPair = STANDARD_AXES, k: int = 1,
                   freq_grid: GridGeometry | None = None) -> InequalityReport:
    """``(sum |s_k h|^2)(sum ||xi_k/(2 pi b_k) W||^2) >= |f|^4 |g|^4 / (16 pi^2)``.

    A zero ``f`` or ``g`` gives ``lhs = rhs = 0``; that report is flagged
    ``degenerate`` and not assertable.
    """
    _check_axis(k)
    return heisenberg_wvd_pair(f, g, p1, p2, axes, freq_grid)[k - 1]


# ---------------------------------------------------------------- Poisson summation

def poisson_qft_check(f: Gaussian, s: tuple[float, float] = (0.0, 0.0),
                      K: LatticeTruncation = LatticeTruncation()) -> tuple[Quaternion, Quaternion]:
    """``(sum_k f(s + k), sum_k exp(2 pi i k1 s1) f^(k) exp(2 pi j k2 s2))``.

    ``f^`` is the cyclic-frequency QFT, taken in closed form from the
    generator; axes are ``i`` (left) and ``j`` (right).
    """
    k1, k2 = K.indices()
    lhs = f.evaluate(s[0] + k1, s[1] + k2).sum(axis=(0, 1))
    hat = f.cyclic_qft(k1, k2)
    terms = qmul(qmul(axis_exp_array(AXIS_I, 2 * math.pi * k1 * s[0]), hat),
                 axis_exp_array(AXIS_J, 2 * math.pi * k2 * s[1]))
    return Quaternion.from_array(lhs), Quaternion.from_array(terms.sum(axis=(0, 1)))


def _extent(gen) -> tuple[np.ndarray, float]:
    env = gen.envelope if isinstance(gen, Chirp) else gen
    return np.asarray(env.center, dtype=float), max(env.sigma)


def _correlation_at(f, g, t, s1, s2) -> np.ndarray:
    """Analytic ``f(t + s/2) conj(g(t - s/2))`` on the mesh ``s1 x s2``."""
    fp = f.evaluate(t[0] + s1 / 2, t[1] + s2 / 2)
    gm = g.evaluate(t[0] - s1 / 2, t[1] - s2 / 2)
    return qmul(fp, qconj(gm))


def _root_factor(axis, b: float) -> np.ndarray:
    """``sqrt(2 pi axis b) = sqrt(2 pi |b|) exp(sgn(b) axis pi/4)``."""
    return math.sqrt(2 * math.pi * abs(b)) * axis_exp_array(axis, math.copysign(math.pi / 4, b))


def _post_phase(p: OffsetParams, u) -> np.ndarray:
    return (-2 * u * (p.d * p.tau - p.b * p.eta) + p.d * (u * u + p.tau * p.tau)) / (2 * p.b)


def poisson_wvd_check(f, g, t: tuple[float, float], s: tuple[float, float],
                      p1: OffsetParams, p2: OffsetParams,
                      K: LatticeTruncation = LatticeTruncation(),
                      lag_step: float | None = None) -> tuple[Quaternion, Quaternion]:
    """Both sides of the lattice identity for the chirped correlation product.

    Left: ``sum_k w(t, s + k)`` with
    ``w(t, s) = exp(i (s1 tau1 + a1 s1^2/2)/b1) h(t, s) exp(j (s2 tau2 + a2 s2^2/2)/b2)``.
    Right: ``sqrt(2 pi i b1) [sum_k exp(2 pi i k1 s1) exp(-i psi1) W(t, 2 pi b k)
    exp(-j psi2) exp(2 pi j k2 s2)] sqrt(2 pi j b2)`` where ``psi`` is the
    ``u``-only part of the kernel exponent and ``W`` is evaluated by direct
    summation over a dense lag grid at the exact lattice frequencies.
    ``f`` and ``g`` are analytic generators.
    """
    if p1.degenerate or p2.degenerate:
        raise BranchError("Poisson check for the WVD needs b1*b2 != 0")
    t = np.asarray(t, dtype=float)
    k1, k2 = K.indices()

    def omega(s1, s2):
        h = _correlation_at(f, g, t, s1, s2)
        left = axis_exp_array(AXIS_I, (s1 * p1.tau + p1.a * s1 ** 2 / 2) / p1.b)
        right = axis_exp_array(AXIS_J, (s2 * p2.tau + p2.a * s2 ** 2 / 2) / p2.b)
        return qmul(qmul(left, h), right)

    lhs = omega(s[0] + k1, s[1] + k2).sum(axis=(0, 1))

    # dense lag grid wide enough for h to vanish and fine enough for the kernel chirp
    cf, sf = _extent(f)
    cg, sg = _extent(g)
    half = 2 * np.maximum(np.abs(cf - t), np.abs(cg - t)) + 18 * max(sf, sg)
    u1 = 2 * math.pi * p1.b * np.arange(-K.K, K.K + 1)
    u2 = 2 * math.pi * p2.b * np.arange(-K.K, K.K + 1)
    steps = []
    for l, (p, u) in enumerate(((p1, u1), (p2, u2))):
        w_max = (np.abs(u).max() + abs(p.a) * half[l] + abs(p.tau)) / abs(p.b)
        steps.append(lag_step or 2 * math.pi / (w_max + 60.0))
    n = [int(math.ceil(2 * half[l] / steps[l])) for l in range(2)]
    lag = GridGeometry(n[0], n[1], steps[0], steps[1], -half[0], -half[1])
    s1g, s2g = lag.mesh()
    W = qolct_values(_correlation_at(f, g, t, s1g, s2g), lag, p1, p2, STANDARD_AXES, u1, u2)

    pre = axis_exp_array(AXIS_I, 2 * math.pi * k1 * s[0] - _post_phase(p1, u1)[:, None])
    post = axis_exp_array(AXIS_J, -_post_phase(p2, u2)[None, :] + 2 * math.pi * k2 * s[1])
    inner = qmul(qmul(pre, W), post).sum(axis=(0, 1))
    rhs = qmul(qmul(_root_factor(AXIS_I, p1.b), inner), _root_factor(AXIS_J, p2.b))
    return Quaternion.from_array(lhs), Quaternion.from_array(rhs)


# ---------------------------------------------------------------- Lieb-type bounds

def _conjugate_exponent(p_exp: float) -> float:
    return math.inf if p_exp == 1.0 else p_exp / (p_exp - 1.0)


def lieb_qlct_ratio(f: SampledSignal, p1: OffsetParams, p2: OffsetParams, p_exp: float,
                    freq_grid: GridGeometry | None = None) -> InequalityReport:
    """Compare ``|L{f}|_q`` with ``|b1 b2|^(-1/2 + 1/q) / (2 pi) |f|_p`` (report only).

    ``L`` is the offset-free transform with axes ``(i, j)``; offsets on the
    parameters are dropped. ``constant`` holds ``lhs/rhs``.
    """
    if not 1.0 <= p_exp <= 2.0:
        raise ValueError("p_exp must lie in [1, 2]")
    if p1.degenerate or p2.degenerate:
        raise BranchError("Lieb ratio needs b1*b2 != 0")
    q = _conjugate_exponent(p_exp)
    spec = qlct_forward(f, p1, p2, STANDARD_AXES, freq_grid)
    lhs = lp_norm(spec, q)
    inv_q = 0.0 if math.isinf(q) else 1.0 / q
    rhs = abs(p1.b * p2.b) ** (-0.5 + inv_q) / (2 * math.pi) * lp_norm(f, p_exp)
    ratio = lhs / rhs if rhs else math.nan
    ctx = {"p": float(p_exp), "q": q, "p1": p1.without_offset(), "p2": p2.without_offset()}
    return InequalityReport.build("lieb-qlct", lhs, rhs, ctx, constant=ratio, assertable=False,
                                 relation="<=")


def lieb_wvd_functional(f: SampledSignal, g: SampledSignal, p1: OffsetParams, p2: OffsetParams,
                        p_exp: float, axes: AxisPair = STANDARD_AXES,
                        freq_grid: GridGeometry | None = None) -> InequalityReport:
    """``L(p) = sum |W|^p du dt`` against the envelope without its unknown constant.

    ``constant`` is ``C_emp = L(p) / envelope`` with envelope
    ``|b1 b2|^(1 - p/2) / (2 pi)^p |f|_2^p |g|_2^p``. Only finiteness and
    scale invariance of ``C_emp`` are meaningful, so the report is not
    assertable.
    """
    if p_exp < 2.0:
        raise ValueError("p_exp must be >= 2")
    if p1.degenerate or p2.degenerate:
        raise BranchError("Lieb functional needs b1*b2 != 0")
    total = wvd_lp_functional(f, g, p1, p2, p_exp, axes, freq_grid)
    env = (abs(p1.b * p2.b) ** (1 - p_exp / 2) / (2 * math.pi) ** p_exp
           * (lp_norm(f, 2) * lp_norm(g, 2)) ** p_exp)
    c_emp = total / env if env else math.nan
    ctx = {"p": float(p_exp), "p1": p1, "p2": p2}
    return InequalityReport.build("lieb-wvd", total, env, ctx, constant=c_emp, assertable=False,
                                 relation="<=")
