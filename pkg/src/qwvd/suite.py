"""The verification suite behind ``qwvd verify``.

Each ``check_*`` function returns a list of reports. Assertable reports
decide the exit status; report-only records (``assertable=False``) are
always emitted and never fail the run. Nothing time-dependent goes into a
record, so two runs with the same options give identical text.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .generators import Gaussian, generate, random_smooth
from .grid import GridGeometry, SampledSignal, lp_norm
from .oracle import oracle_qft, oracle_qolct, oracle_wvd
from .qft import (STANDARD_AXES, angular_freq_grid, qft_fast, qft_forward, qft_inverse,
                  qft_module_spectrum)
from .qolct import (QFT_PARAMS, OffsetParams, qlct_forward, qolct_fast, qolct_forward,
                    qolct_freq_grid, qolct_from_qlct_relation, qolct_inverse,
                    qolct_plancherel_check)
from .quaternion import AXIS_I, AXIS_J, Quaternion, axis_exp, qabs, qmul
from .theorems import (IdentityReport, InequalityReport, LatticeTruncation, heisenberg_qolct,
                       heisenberg_wvd_pair, lieb_qlct_ratio, lieb_wvd_functional,
                       poisson_qft_check, poisson_wvd_check)
from .wvd import (wvd_component_energy, wvd_freq_grid, wvd_inverse, wvd_plancherel_check,
                  wvd_qlct, wvd_qolct, wvd_via_qft)

__all__ = ["SUITES", "SuiteOptions", "CHIRPED_SETS", "run_suite", "render_reports",
           "all_passed", "DEFAULT_TOLERANCES"]

SUITES = ("qft", "qolct", "wvd", "heisenberg", "poisson", "lieb")

# Three chirped unimodular parameter pairs used across the suite.
_C, _S = math.cos(math.pi / 3), math.sin(math.pi / 3)
CHIRPED_SETS = (
    (OffsetParams(1.0, 1.0, 0.0, 1.0, 0.5, 0.25), OffsetParams(1.0, 0.5, -2.0, 0.0, 0.3, 0.1)),
    (OffsetParams(0.5, 2.0, -0.25, 1.0), OffsetParams(2.0, 1.0, 1.0, 1.0, -0.2, 0.4)),
    (OffsetParams(_C, _S, -_S, _C, 0.2, -0.1), OffsetParams(0.8, 0.6, -0.6, 0.8, 0.1, 0.3)),
)

DEFAULT_TOLERANCES = {
    "qft-roundtrip": 1e-8,
    "qft-plancherel": 1e-3,
    "qft-dilation": 1e-4,
    "qft-derivative": 1e-3,
    "qft-gaussian": 1e-6,
    "fast-path": 1e-9,
    "qolct-reduction": 1e-10,
    "qlct-reduction": 1e-12,
    "qolct-plancherel-qft": 1e-3,
    "qolct-plancherel-chirped": 1e-2,
    "qolct-roundtrip": 1e-3,
    "qlct-relation-zero-offset": 1e-12,
    "wvd-energy": 2e-2,
    "wvd-inverse-qft": 1e-3,
    "wvd-inverse-chirped": 1e-2,
    "wvd-qlct-reduction": 1e-12,
    "wvd-autoterm-real": 1e-6,
    "heisenberg-homogeneity": 1e-10,
    "poisson-qft": 1e-10,
    "poisson-wvd": 1e-6,
    "poisson-tail": 1e-9,
    "lieb-scale": 1e-10,
    "lieb-width": 2e-2,
}


@dataclass(frozen=True)
class SuiteOptions:
    K: int = 6
    seeds: int = 2
    use_oracle: bool = False
    tolerances: dict = field(default_factory=dict)

    def tol(self, name: str) -> float:
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])


def _rel_l2(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def _gaussian(n: int = 64, half_width: float = 6.0, **kw) -> SampledSignal:
    return generate("gaussian", GridGeometry.centered(n, half_width), **kw)[0]


def _random_pair(seed: int, n: int = 8) -> tuple[SampledSignal, SampledSignal]:
    rng = np.random.default_rng(seed)
    geo = GridGeometry.centered(n, 2.0)
    return (SampledSignal(geo, rng.standard_normal((n, n, 4))),
            SampledSignal(geo, rng.standard_normal((n, n, 4))))


def _stencil_derivative(v: np.ndarray, delta: float, axis: int) -> np.ndarray:
    """Fourth-order central difference; the two samples nearest each edge are left at 0."""
    out = np.zeros_like(v)
    n = v.shape[axis]
    idx = lambda k: np.take(v, np.arange(2 + k, n - 2 + k), axis=axis)
    inner = (-idx(2) + 8 * idx(1) - 8 * idx(-1) + idx(-2)) / (12 * delta)
    sl = [slice(None)] * v.ndim
    sl[axis] = slice(2, n - 2)
    out[tuple(sl)] = inner
    return out


# ---------------------------------------------------------------- qft

def check_qft(opts: SuiteOptions) -> list:
    out = []
    geo = GridGeometry.centered(64, 6.0)
    f = _gaussian()
    F = qft_forward(f)
    back = qft_inverse(F, time_grid=geo)
    out.append(IdentityReport.build("qft-roundtrip", 0.0, 0.0, opts.tol("qft-roundtrip"),
                                    {"n": 64}, deviation=_rel_l2(back.values, f.values)))

    u1, u2 = F.geometry.mesh()
    expect = np.zeros(F.values.shape)
    expect[..., 0] = 2 * math.pi * np.exp(-(u1 ** 2 + u2 ** 2) / 2)
    out.append(IdentityReport.build("qft-gaussian", F.values, expect, opts.tol("qft-gaussian"),
                                    {"n": 64}, relative=False))

    signals = [("gaussian", f)] + [(f"random{s}", random_smooth(s, geo)) for s in range(opts.seeds)]
    for name, sig in signals:
        ms = qft_module_spectrum(sig)
        lhs = ms.l2_norm() ** 2
        rhs = 4 * math.pi ** 2 * lp_norm(sig, 2) ** 2
        out.append(IdentityReport.build("qft-plancherel", lhs, rhs, opts.tol("qft-plancherel"),
                                        {"signal": name}))

    # dilation: k1 k2 F{f(k1 ., k2 .)}(u) = F{f}(u1/k1, u2/k2)
    g = Gaussian(Quaternion(1.0, 0.5, -0.25, 0.75), (0.3, -0.2), (1.0, 1.0))
    k1 = k2 = 2.0
    dil = SampledSignal(geo, g.evaluate(*(k * x for k, x in zip((k1, k2), geo.mesh()))))
    freq = angular_freq_grid(geo, size=(32, 32))
    lhs = k1 * k2 * qft_forward(dil, freq_grid=freq).values
    scaled = GridGeometry(32, 32, freq.delta1 / k1, freq.delta2 / k2,
                          freq.origin1 / k1, freq.origin2 / k2)
    rhs = qft_forward(g.sample(geo), freq_grid=scaled).values
    out.append(IdentityReport.build("qft-dilation", lhs, rhs, opts.tol("qft-dilation"),
                                    {"k1": k1, "k2": k2}))

    # derivative: F{d f}(u) = (i u1)^m F{f}(u) (j u2)^n
    geo_d = GridGeometry.centered(96, 6.0)
    fs = g.sample(geo_d)
    Fs = qft_forward(fs)
    v1, v2 = Fs.geometry.mesh()
    for m, n in ((1, 0), (0, 1), (1, 1)):
        d = fs.values
        if m:
            d = _stencil_derivative(d, geo_d.delta1, 0)
        if n:
            d = _stencil_derivative(d, geo_d.delta2, 1)
        lhs = qft_forward(SampledSignal(geo_d, d)).values
        rhs = Fs.values
        if m:
            rhs = qmul(np.stack([0 * v1, v1, 0 * v1, 0 * v1], axis=-1), rhs)
        if n:
            rhs = qmul(rhs, np.stack([0 * v2, 0 * v2, v2, 0 * v2], axis=-1))
        dev = float(np.abs(lhs - rhs).max() / np.abs(rhs).max())
        out.append(IdentityReport.build("qft-derivative", 0.0, 0.0, opts.tol("qft-derivative"),
                                        {"m": m, "n": n}, deviation=dev))

    ref = "oracle" if opts.use_oracle else "direct"
    worst = 0.0
    for seed in range(opts.seeds):
        fr, _ = _random_pair(seed)
        fast = qft_fast(fr).values
        base = (oracle_qft(fr, freq_grid=angular_freq_grid(fr.geometry)) if opts.use_oracle
                else qft_forward(fr)).values
        worst = max(worst, float(np.abs(fast - base).max()))
    out.append(IdentityReport.build("qft-fast", 0.0, 0.0, opts.tol("fast-path"),
                                    {"reference": ref, "seeds": opts.seeds}, deviation=worst))
    return out


# ---------------------------------------------------------------- qolct

def check_qolct(opts: SuiteOptions) -> list:
    out = []
    # reduction at the QFT parameters, against the literal oracle
    f = _gaussian(16, 6.0, amplitude=Quaternion(1.0, -0.5, 0.25, 0.5))
    freq = angular_freq_grid(f.geometry)
    lhs = qolct_forward(f, QFT_PARAMS, QFT_PARAMS, freq_grid=freq).values
    F = oracle_qft(f, freq_grid=freq).values
    rhs = qmul(qmul(axis_exp(AXIS_I, -math.pi / 4).to_array(), F),
               axis_exp(AXIS_J, -math.pi / 4).to_array()) / (2 * math.pi)
    out.append(IdentityReport.build("qolct-reduction", lhs, rhs, opts.tol("qolct-reduction"),
                                    {"n": 16}, relative=False))

    p1, p2 = CHIRPED_SETS[0]
    a = qolct_forward(f, p1.without_offset(), p2.without_offset()).values
    b = qlct_forward(f, p1, p2).values
    out.append(IdentityReport.build("qlct-reduction", a, b, opts.tol("qlct-reduction"),
                                    {"p1": p1.without_offset(), "p2": p2.without_offset()},
                                    relative=False))

    g = _gaussian(64, 6.0, amplitude=Quaternion(1.0, 0.5, -0.3, 0.2))
    lhs, rhs = qolct_plancherel_check(g, QFT_PARAMS, QFT_PARAMS)
    out.append(IdentityReport.build("qolct-plancherel", lhs, rhs, opts.tol("qolct-plancherel-qft"),
                                    {"p1": QFT_PARAMS, "p2": QFT_PARAMS}))
    for q1, q2 in CHIRPED_SETS:
        lhs, rhs = qolct_plancherel_check(g, q1, q2)
        out.append(IdentityReport.build("qolct-plancherel", lhs, rhs,
                                        opts.tol("qolct-plancherel-chirped"), {"p1": q1, "p2": q2}))
        spec = qolct_forward(g, q1, q2)
        back = qolct_inverse(spec, q1, q2, time_grid=g.geometry)
        out.append(IdentityReport.build("qolct-roundtrip", 0.0, 0.0, opts.tol("qolct-roundtrip"),
                                        {"p1": q1, "p2": q2},
                                        deviation=_rel_l2(back.values, g.values)))

    ref = "oracle" if opts.use_oracle else "direct"
    for q1, q2 in CHIRPED_SETS:
        worst = 0.0
        for seed in range(opts.seeds):
            fr, _ = _random_pair(seed)
            fg = qolct_freq_grid(fr.geometry, q1, q2)
            fast = qolct_fast(fr, q1, q2, fg).values
            base = (oracle_qolct(fr, q1, q2, freq_grid=fg) if opts.use_oracle
                    else qolct_forward(fr, q1, q2, freq_grid=fg)).values
            worst = max(worst, float(np.abs(fast - base).max()))
        out.append(IdentityReport.build("qolct-fast", 0.0, 0.0, opts.tol("fast-path"),
                                        {"reference": ref, "p1": q1, "p2": q2,
                                         "seeds": opts.seeds}, deviation=worst))

    # the QOLCT/QLCT phase relation: exact at zero offsets, report only otherwise
    small = _gaussian(16, 6.0)
    zero = qolct_from_qlct_relation(small, p1.without_offset(), p2.without_offset())
    out.append(IdentityReport.build("qlct-relation", zero.max_deviation, 0.0,
                                    opts.tol("qlct-relation-zero-offset"),
                                    {"p1": p1.without_offset(), "p2": p2.without_offset()},
                                    relative=False, deviation=zero.max_deviation))
    for q1, q2 in ((OffsetParams(1.0, 1.0, 0.0, 1.0, 0.5, 0.0), OffsetParams(1.0, 1.0, 0.0, 1.0)),
                   CHIRPED_SETS[0]):
        rep = qolct_from_qlct_relation(small, q1, q2)
        out.append(IdentityReport.build("qlct-relation", rep.max_deviation, rep.max_magnitude,
                                        0.0, {"p1": q1, "p2": q2, "t_eval": "0,0"},
                                        relative=False, deviation=rep.relative_deviation,
                                        assertable=False))
    return out


# ---------------------------------------------------------------- wvd

def check_wvd(opts: SuiteOptions) -> list:
    out = []
    geo = GridGeometry.centered(24, 6.0)
    f = generate("gaussian", geo, amplitude=Quaternion(1.0, 0.5, -0.3, 0.2))[0]
    g = generate("shifted-gaussian", geo, sigma=1.2)[0]
    for q1, q2 in ((QFT_PARAMS, QFT_PARAMS), CHIRPED_SETS[0]):
        norm, prod = wvd_plancherel_check(f, g, q1, q2)
        out.append(IdentityReport.build("wvd-energy", norm ** 2, prod ** 2, opts.tol("wvd-energy"),
                                        {"p1": q1, "p2": q2}))
        # the printed form compares the norm itself with the squared energies
        out.append(IdentityReport.build("wvd-energy-printed", norm, prod ** 2, 0.0,
                                        {"p1": q1, "p2": q2}, assertable=False))

    small = GridGeometry.centered(16, 6.0)
    fs = generate("gaussian", small, amplitude=Quaternion(1.0, 0.5, -0.3, 0.2))[0]
    gs = generate("gaussian", small, sigma=1.2)[0]
    for (q1, q2), key in (((QFT_PARAMS, QFT_PARAMS), "wvd-inverse-qft"),
                          (CHIRPED_SETS[0], "wvd-inverse-chirped"),
                          ((OffsetParams(1.0, 1.0, 0.0, 1.0, 0.3, 0.2),) * 2, "wvd-inverse-chirped")):
        W = wvd_qolct(fs, gs, q1, q2, refine=True)
        rec = wvd_inverse(W, gs, q1, q2)
        out.append(IdentityReport.build("wvd-inverse", 0.0, 0.0, opts.tol(key), {"p1": q1, "p2": q2},
                                        deviation=_rel_l2(rec.values, fs.values)))
        mid = wvd_inverse(W, gs, q1, q2, kernel_argument="midpoint")
        out.append(IdentityReport.build("wvd-inverse-midpoint", 0.0, 0.0, 0.0,
                                        {"p1": q1, "p2": q2},
                                        deviation=_rel_l2(mid.values, fs.values), assertable=False))

    p1, p2 = CHIRPED_SETS[0]
    a = wvd_qolct(fs, gs, p1.without_offset(), p2.without_offset()).values
    b = wvd_qlct(fs, gs, p1, p2).values
    out.append(IdentityReport.build("wvd-qlct-reduction", a, b, opts.tol("wvd-qlct-reduction"),
                                    {"p1": p1.without_offset(), "p2": p2.without_offset()},
                                    relative=False))

    # auto-term of a real even signal at QFT parameters, with the constant phases removed
    real = generate("gaussian", small)[0]
    W = wvd_qolct(real, real, QFT_PARAMS, QFT_PARAMS).values
    stripped = 2 * math.pi * qmul(qmul(axis_exp(AXIS_I, math.pi / 4).to_array(), W),
                                  axis_exp(AXIS_J, math.pi / 4).to_array())
    vec = float(np.linalg.norm(stripped[..., 1:]))
    sc = float(np.linalg.norm(stripped[..., 0]))
    out.append(IdentityReport.build("wvd-autoterm-real", vec, sc, opts.tol("wvd-autoterm-real"),
                                    {"signal": "gaussian"}, deviation=vec / sc))

    ref = "oracle" if opts.use_oracle else "direct"
    for q1, q2 in CHIRPED_SETS[:2]:
        worst = 0.0
        for seed in range(opts.seeds):
            fr, gr = _random_pair(seed)
            fg = wvd_freq_grid(fr.geometry, q1, q2)
            fast = wvd_via_qft(fr, gr, q1, q2, fg).values
            base = (oracle_wvd(fr, gr, q1, q2, freq_grid=fg) if opts.use_oracle
                    else wvd_qolct(fr, gr, q1, q2, freq_grid=fg).values)
            worst = max(worst, float(np.abs(fast - base).max()))
        out.append(IdentityReport.build("wvd-fast", 0.0, 0.0, opts.tol("fast-path"),
                                        {"reference": ref, "p1": q1, "p2": q2,
                                         "seeds": opts.seeds}, deviation=worst))
    return out


# ---------------------------------------------------------------- heisenberg

HEISENBERG_KINDS = ("gaussian", "shifted-gaussian", "chirp")


def check_heisenberg(opts: SuiteOptions) -> list:
    out = []
    geo = GridGeometry.centered(64, 6.0)
    sets = ((QFT_PARAMS, QFT_PARAMS), CHIRPED_SETS[0])
    for kind in HEISENBERG_KINDS:
        f = generate(kind, geo)[0]
        for q1, q2 in sets:
            for k in (1, 2):
                out.append(_tagged(heisenberg_qolct(f, q1, q2, k=k), kind))
    for seed in range(opts.seeds):
        f = random_smooth(seed, geo)
        for k in (1, 2):
            out.append(_tagged(heisenberg_qolct(f, *CHIRPED_SETS[0], k=k), f"random{seed}"))

    geo_w = GridGeometry.centered(32, 6.0)
    for kind in HEISENBERG_KINDS:
        f = generate(kind, geo_w)[0]
        for rep in heisenberg_wvd_pair(f, f, QFT_PARAMS, QFT_PARAMS):
            out.append(_tagged(rep, kind))
    f = generate("gaussian", geo_w)[0]
    for rep in heisenberg_wvd_pair(f, f, *CHIRPED_SETS[0]):
        out.append(_tagged(rep, "gaussian"))

    # the sampled delta is outside the smooth, decaying class the bounds assume
    d = generate("delta", geo)[0]
    for k in (1, 2):
        out.append(_tagged(heisenberg_qolct(d, QFT_PARAMS, QFT_PARAMS, k=k), "delta",
                           assertable=False))
    geo_r = GridGeometry.centered(24, 6.0)
    for seed in range(opts.seeds):
        f = random_smooth(seed, geo_r)
        for rep in heisenberg_wvd_pair(f, f, QFT_PARAMS, QFT_PARAMS):
            out.append(_tagged(rep, f"random{seed}"))

    # degree-4 homogeneity under f -> 2f
    f = random_smooth(100, geo)
    base = heisenberg_qolct(f, *CHIRPED_SETS[0], k=1)
    dbl = heisenberg_qolct(f.scaled(2.0), *CHIRPED_SETS[0], k=1)
    dev = max(abs(dbl.lhs / (16 * base.lhs) - 1), abs(dbl.rhs / (16 * base.rhs) - 1))
    out.append(IdentityReport.build("heisenberg-homogeneity", dbl.lhs, 16 * base.lhs,
                                    opts.tol("heisenberg-homogeneity"), {"form": "qolct"},
                                    deviation=dev))
    fw = random_smooth(100, geo_r)
    b1, _ = heisenberg_wvd_pair(fw, fw, QFT_PARAMS, QFT_PARAMS)
    d1, _ = heisenberg_wvd_pair(fw.scaled(2.0), fw, QFT_PARAMS, QFT_PARAMS)
    dev = max(abs(d1.lhs / (16 * b1.lhs) - 1), abs(d1.rhs / (16 * b1.rhs) - 1))
    out.append(IdentityReport.build("heisenberg-homogeneity", d1.lhs, 16 * b1.lhs,
                                    opts.tol("heisenberg-homogeneity"), {"form": "wvd"},
                                    deviation=dev))
    return out


def _tagged(rep: InequalityReport, signal: str, assertable: bool = True) -> InequalityReport:
    ctx = {"signal": signal, **rep.context}
    if not assertable:
        ctx["hypothesis"] = "not-smooth"
    return replace(rep, context=ctx, assertable=rep.assertable and assertable)


# ---------------------------------------------------------------- poisson

def _qdev(a: Quaternion, b: Quaternion) -> float:
    return abs(a - b)


POISSON_GAUSSIAN = Gaussian(Quaternion(1.0), (0.0, 0.0), (1 / math.sqrt(2 * math.pi),) * 2)


def check_poisson(opts: SuiteOptions) -> list:
    out = []
    K = LatticeTruncation(opts.K)
    G = POISSON_GAUSSIAN
    for s in ((0.0, 0.0), (0.5, 0.5)):
        lhs, rhs = poisson_qft_check(G, s, K)
        out.append(IdentityReport.build("poisson-qft", abs(lhs), abs(rhs), opts.tol("poisson-qft"),
                                        {"s": f"{s[0]!r},{s[1]!r}", "K": K.K},
                                        deviation=_qdev(lhs, rhs)))
        l2, r2 = poisson_qft_check(G, s, K.doubled())
        out.append(IdentityReport.build("poisson-qft-tail", abs(l2), abs(lhs),
                                        opts.tol("poisson-tail"),
                                        {"s": f"{s[0]!r},{s[1]!r}", "K": K.K},
                                        deviation=max(_qdev(lhs, l2), _qdev(rhs, r2))))

    # the analytic cyclic transform against the numerical angular one
    geo = GridGeometry.centered(64, 4.0)
    num = qft_forward(G.sample(geo))
    u1, u2 = num.geometry.mesh()
    out.append(IdentityReport.build("poisson-hat-crosscheck", num.values, G.angular_qft(u1, u2),
                                    1e-10, {"n": 64}, relative=False))

    for (q1, q2), t, s in (((OffsetParams(1.0, 1.0, 0.0, 1.0),) * 2, (0.0, 0.0), (0.0, 0.0)),
                           ((OffsetParams(1.0, 1.0, 0.0, 1.0, 0.3, 0.2),
                             OffsetParams(2.0, 1.0, 1.0, 1.0, -0.2, 0.4)), (0.1, -0.2), (0.3, 0.1))):
        lhs, rhs = poisson_wvd_check(G, G, t, s, q1, q2, K)
        ctx = {"p1": q1, "p2": q2, "t": f"{t[0]!r},{t[1]!r}", "s": f"{s[0]!r},{s[1]!r}", "K": K.K}
        out.append(IdentityReport.build("poisson-wvd", abs(lhs), abs(rhs), opts.tol("poisson-wvd"),
                                        ctx, deviation=_qdev(lhs, rhs)))
        l2, r2 = poisson_wvd_check(G, G, t, s, q1, q2, K.doubled())
        out.append(IdentityReport.build("poisson-wvd-tail", abs(l2), abs(lhs),
                                        opts.tol("poisson-tail"), ctx,
                                        deviation=max(_qdev(lhs, l2), _qdev(rhs, r2))))
    return out


# ---------------------------------------------------------------- lieb

def check_lieb(opts: SuiteOptions) -> list:
    out = []
    f = _gaussian(32, 6.0, amplitude=Quaternion(1.0, 0.5, -0.3, 0.2))
    for p_exp in (1.0, 1.5, 2.0):
        out.append(lieb_qlct_ratio(f, QFT_PARAMS, QFT_PARAMS, p_exp))

    geo = GridGeometry.centered(16, 6.0)
    fs = generate("gaussian", geo)[0]
    gs = generate("shifted-gaussian", geo)[0]
    q1, q2 = CHIRPED_SETS[0]
    for p_exp in (2.0, 4.0):
        base = lieb_wvd_functional(fs, gs, q1, q2, p_exp)
        scaled = lieb_wvd_functional(fs.scaled(2.0), gs, q1, q2, p_exp)
        out.append(base)
        finite = math.isfinite(base.constant) and base.constant > 0
        dev = abs(scaled.constant / base.constant - 1) if finite else math.inf
        out.append(IdentityReport.build("lieb-scale", scaled.constant, base.constant,
                                        opts.tol("lieb-scale"), {"p": p_exp}, deviation=dev))
    geo_w = GridGeometry.centered(24, 6.0)
    constants = []
    for sigma in (0.8, 1.0, 1.25):
        fw = generate("gaussian", geo_w, sigma=sigma)[0]
        rep = lieb_wvd_functional(fw, fw, q1, q2, 2.0)
        constants.append(rep.constant)
        out.append(_tagged(rep, f"gaussian-sigma{sigma!r}"))
    spread = max(constants) / min(constants) - 1
    out.append(IdentityReport.build("lieb-width-stability", max(constants), min(constants),
                                    opts.tol("lieb-width"), {"p": 2.0}, deviation=spread))
    return out


_RUNNERS = {
    "qft": check_qft,
    "qolct": check_qolct,
    "wvd": check_wvd,
    "heisenberg": check_heisenberg,
    "poisson": check_poisson,
    "lieb": check_lieb,
}


def run_suite(selector: str, opts: SuiteOptions = SuiteOptions()) -> list:
    """Run one named suite, or all of them in a fixed order for ``"all"``."""
    if selector == "all":
        names = SUITES
    elif selector in _RUNNERS:
        names = (selector,)
    else:
        raise ValueError(f"unknown suite {selector!r}; expected all or one of {SUITES}")
    unknown = sorted(set(opts.tolerances) - set(DEFAULT_TOLERANCES))
    if unknown:
        raise ValueError(f"unknown tolerance name(s) {unknown}; known: {sorted(DEFAULT_TOLERANCES)}")
    reports = []
    for name in names:
        reports.extend(_RUNNERS[name](opts))
    return reports


def _status(rep) -> str:
    if not rep.assertable:
        return "REPORT"
    ok = rep.satisfied if isinstance(rep, InequalityReport) else rep.passed
    return "PASS" if ok else "FAIL"


def render_reports(reports) -> str:
    return "".join(f"{_status(r)} {r.record()}\n" for r in reports)


def all_passed(reports) -> bool:
    return all(_status(r) != "FAIL" for r in reports)
