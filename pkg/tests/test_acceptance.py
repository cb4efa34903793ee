"""Acceptance suite: ten criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.  Thresholds are the stated
ones; where a criterion fails the line carries the measured numbers.
"""
from __future__ import annotations

import math
import time

import numpy as np
import pytest

from oracles import brute_amplitudes, dwell_time, k_of, random_configs, trapezoid_averages
from swpclock import (
    BarrierConfig,
    Channel,
    GaussianPacket,
    ScatteringContext,
    clock_time_fd_oracle,
    density_of_states,
    ensemble_averages,
    resonance_reflection_time,
    resonance_widths,
    scatter,
    stationary_times,
    transparent_reflection_time,
)
from swpclock.cli import parse_cli, run_sweep

pytestmark = pytest.mark.acceptance

CTX = ScatteringContext()
V0 = 0.30
LINES: dict[int, str] = {}

# width sweep for the packet criteria; same grid as the documented CLI example
SWEEP = np.linspace(0.5, 40.0, 200)


def _report(n, title, ok, detail):
    LINES[n] = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    return ok, detail


def _packet(energy, sigma=10.0):
    return GaussianPacket(k_of(energy), sigma, -8.0 * sigma)


def criterion_1():
    rng = np.random.default_rng(20240101)
    v0, v1, a, e = random_configs(rng, 10_000)
    start = time.perf_counter()
    worst_tr = worst_id = 0.0
    min_tau = math.inf
    for args in zip(v0, v1, a, e):
        p, q, w, en = map(float, args)
        t = stationary_times(CTX, BarrierConfig(p, q, w), k_of(en))
        worst_tr = max(worst_tr, abs(t.t_coeff + t.r_coeff - 1.0))
        worst_id = max(worst_id, abs(t.tau_d - (t.t_coeff * t.t_ct + t.r_coeff * t.t_cr)))
        min_tau = min(min_tau, t.tau_d)
    elapsed = time.perf_counter() - start
    ok = worst_tr <= 1e-10 and worst_id <= 1e-10 and min_tau >= -1e-12 and elapsed < 5.0
    return _report(1, "conservation and dwell identity", ok,
                   f"max|T+R-1|={worst_tr:.2e} max|identity|={worst_id:.2e} "
                   f"min tau_d={min_tau:.3g} over 1e4 configs in {elapsed:.2f}s")


def criterion_2():
    rng = np.random.default_rng(77)
    v0, v1, a, e = random_configs(rng, 1000)
    start = time.perf_counter()
    worst, worst_case = 0.0, None
    regimes = set()
    for args in zip(v0, v1, a, e):
        p, q, w, en = map(float, args)
        b = BarrierConfig(p, q, w)
        t = stationary_times(CTX, b, k_of(en))
        regimes.add((t.regime.name, q > 0))
        for value, channel in ((t.t_ct, Channel.TRANSMISSION), (t.t_cr, Channel.REFLECTION)):
            fd = clock_time_fd_oracle(CTX, b, k_of(en), channel, eps=1e-6)
            dev = abs(value - fd) / max(abs(value), 1e-3)
            if dev > worst:
                worst, worst_case = dev, (b, en, channel, value)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-5 and len(regimes) == 4 and elapsed < 5.0
    b, en, channel, value = worst_case
    fine = clock_time_fd_oracle(CTX, b, k_of(en), channel, eps=1e-7)
    return _report(2, "finite-difference phase oracle", ok,
                   f"max rel dev={worst:.2e} over 1e3 configs ({len(regimes)}/4 regime x sign cells) in {elapsed:.2f}s; "
                   f"worst case (V0={b.v0:.4f} V1={b.v1:.4f} a={b.a:.2f} E={en:.4f}) "
                   f"at eps=1e-7: rel dev={abs(value - fine) / max(abs(value), 1e-3):.1e}")


def criterion_3():
    k1 = k_of(0.35)
    r_max = closed_dev = 0.0
    signs_ok = True
    for v1 in (0.15, -0.15):
        for a_n in resonance_widths(CTX, BarrierConfig(V0, v1, 1.0), k1, 3):
            b = BarrierConfig(V0, v1, a_n)
            t = stationary_times(CTX, b, k1)
            closed = resonance_reflection_time(CTX, b, k1)
            r_max = max(r_max, scatter(CTX, b, k1).r_coeff)
            closed_dev = max(closed_dev, abs(t.t_cr - closed) / abs(closed))
            signs_ok &= math.copysign(1.0, t.t_cr) == -math.copysign(1.0, v1)
    ok = r_max < 1e-10 and closed_dev <= 1e-8 and signs_ok
    return _report(3, "resonances", ok,
                   f"max R={r_max:.3e} (needs <1e-10; a bare 0|V1 step keeps R=((k1-k3)/(k1+k3))^2) "
                   f"closed-form dev={closed_dev:.1e} peak sign -sign(V1): {signs_ok}")


def criterion_4():
    ratios = []
    for e in (0.35, 0.18):
        for v1 in (0.15, -0.15):
            b = BarrierConfig(V0, v1, 1e-3)
            ratios.append(stationary_times(CTX, b, k_of(e)).t_cr / transparent_reflection_time(CTX, b, k_of(e)))
    q2 = math.sqrt(2 * (V0 - 0.18))
    worst_opaque = 0.0
    for v1 in (0.15, -0.15):
        for x in np.linspace(12.05, 40.0, 60):
            t = stationary_times(CTX, BarrierConfig(V0, v1, x / q2), k_of(0.18))
            worst_opaque = max(worst_opaque, abs(t.t_cr - t.tau_d) / t.tau_d)
    ok = all(0.99 <= r <= 1.01 for r in ratios) and worst_opaque < 1e-6
    return _report(4, "transparent and opaque asymptotes", ok,
                   f"thin ratios in [{min(ratios):.6f}, {max(ratios):.6f}] "
                   f"max opaque |t_cr-tau_d|/tau_d={worst_opaque:.1e} for q2a in (12, 40]")


def criterion_5():
    worst_200 = 0.0
    monotone = True
    for v1 in (0.15, -0.15):
        b = BarrierConfig(V0, v1, 5.0)
        ref = stationary_times(CTX, b, k_of(0.35))
        refs = np.array([ref.t_ct, ref.t_cr, ref.tau_d, ref.tau_d])
        devs = []
        for sigma in (50.0, 100.0, 200.0):
            avg = ensemble_averages(_packet(0.35, sigma), CTX, b)
            got = np.array([avg.avg_tct, avg.avg_tcr, avg.avg_taud_t, avg.avg_taud_r])
            devs.append(np.abs(got / refs - 1.0))
        devs = np.array(devs)
        monotone &= bool(np.all(devs[0] > devs[1]) and np.all(devs[1] > devs[2]))
        worst_200 = max(worst_200, float(devs[2].max()))
    ok = worst_200 < 0.01 and monotone
    return _report(5, "stationary limit", ok,
                   f"max rel dev at sigma=200: {worst_200:.2e}; monotone over sigma=50/100/200: {monotone}")


def _r_squared(x, y):
    coef = np.polyfit(x, y, 1)
    resid = y - np.polyval(coef, x)
    return 1.0 - resid @ resid / ((y - y.mean()) @ (y - y.mean()))


def criterion_6():
    window = SWEEP[SWEEP >= 20.0]
    fits, gaps_ok, detail = [], True, []
    for v1, sign in ((0.15, 1.0), (-0.15, -1.0)):
        avgs = [ensemble_averages(_packet(0.22), CTX, BarrierConfig(V0, v1, a)) for a in window]
        tct = np.array([r.avg_tct for r in avgs])
        tdt = np.array([r.avg_taud_t for r in avgs])
        fits += [_r_squared(window, tct), _r_squared(window, tdt)]
        gap = tct - tdt
        gaps_ok &= bool(np.all(np.sign(gap) == sign))
        detail.append(f"V1={v1:+.2f} gap in [{gap.min():.3g}, {gap.max():.3g}]")
    ok = min(fits) >= 0.999 and gaps_ok
    return _report(6, "transmitted averages, opaque growth", ok,
                   f"min R^2={min(fits):.6f} on a in [20, 40]; " + "; ".join(detail))


def criterion_7():
    k0 = k_of(0.22)
    q2 = math.sqrt(2 * (V0 - 0.22))
    # thin: q2 a <= 0.2
    thin = np.linspace(0.01, 0.2 / q2, 10)
    thin_dev, thin_neg = 0.0, True
    for a in thin:
        b = BarrierConfig(V0, -0.15, a)
        avg = ensemble_averages(_packet(0.22), CTX, b).avg_tcr
        ref = stationary_times(CTX, b, k0).t_cr
        thin_neg &= avg < 0
        thin_dev = max(thin_dev, abs(avg / ref - 1.0))
    full = np.concatenate([thin, SWEEP])
    min_plus = min(ensemble_averages(_packet(0.22), CTX, BarrierConfig(V0, 0.15, a)).avg_tcr for a in full)
    # opaque: q2 a > 5 on the sweep, restricted to P_R > 0.99
    opaque_gap, n_opaque = 0.0, 0
    for v1 in (0.15, -0.15):
        for a in SWEEP[q2 * SWEEP > 5.0]:
            avg = ensemble_averages(_packet(0.22), CTX, BarrierConfig(V0, v1, a))
            if avg.p_r > 0.99:
                n_opaque += 1
                opaque_gap = max(opaque_gap, abs(avg.avg_tcr - avg.avg_taud_r) / abs(avg.avg_taud_r))
    ok = thin_neg and thin_dev <= 0.05 and min_plus >= 0.0 and n_opaque > 0 and opaque_gap <= 0.01
    return _report(7, "reflected averages", ok,
                   f"V1<0 thin: negative={thin_neg}, max dev from t_cr(k0)={thin_dev:.2%}; "
                   f"V1>0 min <t_cR>={min_plus:.4f}; opaque max |<t_cR>-<tau_D>_R|/<tau_D>_R={opaque_gap:.2%} "
                   f"over {n_opaque} widths with q2a>5, P_R>0.99 (needs <=1%)")


def criterion_8():
    k0 = k_of(0.41)
    detail, ok = [], True
    for v1 in (0.15, -0.15):
        a1 = resonance_widths(CTX, BarrierConfig(V0, v1, 1.0), k0, 1)[0]
        b = BarrierConfig(V0, v1, a1)
        avg = ensemble_averages(_packet(0.41), CTX, b).avg_tcr
        ref = stationary_times(CTX, b, k0).t_cr
        ok &= abs(avg) < abs(ref)
        detail.append(f"V1={v1:+.2f}: |<t_cR>|={abs(avg):.3f} vs |t_cR(k0)|={abs(ref):.3f}")
    return _report(8, "smoothing at the first resonance", ok, "; ".join(detail) + f" (a1={a1:.4f})")


def criterion_9():
    worst_sym = worst_asym = 0.0
    for a in (0.5, 3.0, 9.0, 25.0):
        for e in (0.35, 0.6, 1.2):
            b = BarrierConfig(V0, 0.0, a)
            d = density_of_states(CTX, b, k_of(e))
            t = stationary_times(CTX, b, k_of(e))
            worst_sym = max(worst_sym, abs(t.t_ct - math.pi * a * d.nu) / t.t_ct)
    # T t_ct + R t_cR is the dwell time for either incidence direction, so
    # 2 pi hbar a nu = tau_D(left) + tau_D(right), each from its |psi|^2 integral
    for v1 in (0.15, -0.15, 0.05):
        for a in (0.7, 5.0, 12.0):
            for e in (0.35, 0.6):
                k1 = k_of(e)
                k3 = math.sqrt(k1 * k1 - 2 * v1)
                d = density_of_states(CTX, BarrierConfig(V0, v1, a), k1)
                left = dwell_time(k1, V0, v1, a)
                right = dwell_time(k3, V0 - v1, -v1, a)
                ref = (left + right) / (2 * math.pi * a)
                r_plus = abs(brute_amplitudes(k3, V0 - v1, -v1, a)[0]) ** 2
                worst_asym = max(worst_asym, abs(d.nu - ref) / ref, abs(d.r_plus - r_plus))
    ok = worst_sym <= 1e-10 and worst_asym <= 1e-10
    return _report(9, "density of states", ok,
                   f"symmetric max rel dev={worst_sym:.1e}; asymmetric vs independent dwell integrals={worst_asym:.1e}")


def criterion_10(tmp_dir):
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(20):
        v1 = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.05, 0.2))
        e = float(rng.uniform(0.16, 0.6))
        sigma = float(rng.uniform(3.0, 30.0))
        a = float(rng.uniform(0.5, 30.0))
        p = GaussianPacket(k_of(e), sigma, -8 * sigma)
        avg = ensemble_averages(p, CTX, BarrierConfig(V0, v1, a))
        tr = trapezoid_averages(p.k0, sigma, V0, v1, a)
        ref = [tr[1] / tr[0], tr[2] / tr[0], tr[3] / tr[1], tr[4] / tr[2], tr[5] / tr[1], tr[6] / tr[2]]
        got = [avg.p_t, avg.p_r, avg.avg_tct, avg.avg_tcr, avg.avg_taud_t, avg.avg_taud_r]
        worst = max(worst, max(abs(g - r) / abs(r) for g, r in zip(got, ref)))
    identical = True
    for template in ("stationary --v0 0.30 --v1 0.15 --energy 0.35 --a-min 0.1 --a-max 40 --a-steps 400",
                     "ensemble --v0 0.30 --v1 -0.15 --energy 0.22 --sigma 10 --z0 -80 --a-min 0.5 --a-max 40 --a-steps 200"):
        out = str(tmp_dir / "repeat.csv")
        spec = parse_cli(template.split() + ["--out", out])
        blobs = []
        for _ in range(2):
            assert run_sweep(spec) == 0
            with open(out, "rb") as fh:
                blobs.append(fh.read())
        identical &= blobs[0] == blobs[1]
    ok = worst <= 1e-7 and identical
    return _report(10, "quadrature oracle and CSV determinism", ok,
                   f"max rel dev vs 1e6-node trapezoid={worst:.1e} over 20 configs; byte-identical CSVs: {identical}")


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n):
    ok, detail = globals()[f"criterion_{n}"]()
    assert ok, detail


def test_criterion_10(tmp_path):
    ok, detail = criterion_10(tmp_path)
    assert ok, detail


if __name__ == "__main__":
    import pathlib
    import tempfile

    for n in range(1, 10):
        globals()[f"criterion_{n}"]()
        print(LINES[n])
    with tempfile.TemporaryDirectory() as d:
        criterion_10(pathlib.Path(d))
    print(LINES[10])
