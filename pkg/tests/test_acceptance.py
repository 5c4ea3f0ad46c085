"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one PASS/FAIL line per criterion (or per criterion leg) in
the form ``ACCEPTANCE <id> <name>: PASS|FAIL``; run with ``pytest -s`` to see
the lines for passing criteria too.
"""

import time

import numpy as np
import pytest

from drivenqsl.distinguish import (
    blp_measure,
    maximize_blp,
    optimal_pair,
    sample_state_pairs,
    trace_distance,
)
from drivenqsl.model import PhysicalParams, amplitude, complex_rate, evolve_density, population
from drivenqsl.oracle import integrate_amplitude
from drivenqsl.speedlimit import generator_norms, qslt_identity, qslt_pure
from drivenqsl.transition import critical_drive_strength, speedup_onset_drive_strength, sweep_omega, sweep_window

WIDTH_GRID = (0.05, 0.5, 3.0, 6.0, 9.0)
DRIVE_GRID = (0.0, 2.0, 5.31, 8.0, 20.0, 50.0)


def _report(tag: str, ok: bool, detail: str = "") -> bool:
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {tag}: {'PASS' if ok else 'FAIL'}{suffix}")
    return ok


@pytest.fixture(scope="module")
def window_sweep():
    """Windowed-bound sweep at lambda=3 for drives {0, 2, 4}, grid step 5e-3."""
    taus = (0.0, 6.5)
    n = 1301
    return {drive: sweep_window(3.0, (drive,), 1.0, taus, n) for drive in (0.0, 2.0, 4.0)}


def test_criterion_01_oracle_equivalence():
    start = time.monotonic()
    worst = 0.0
    for lam in WIDTH_GRID:
        for drive in DRIVE_GRID:
            params = PhysicalParams(lam, drive)
            trace = integrate_amplitude(params, 10.0)
            err = float(np.abs(trace.amplitude - amplitude(params, trace.times)).max())
            worst = max(worst, err)
    elapsed = time.monotonic() - start
    ok = worst < 1e-8 and elapsed < 30.0
    assert _report("01 oracle-equivalence", ok, f"max err {worst:.2e}, {elapsed:.1f}s"), (
        f"max |closed-form - ODE| = {worst:.3e} (limit 1e-8), runtime {elapsed:.1f}s (limit 30s)"
    )


def test_criterion_02_critical_drive_strengths():
    expected = {3.0: 5.31, 6.0: 10.89, 9.0: 16.41}
    start = time.monotonic()
    measured = {lam: critical_drive_strength(lam, 1.0) for lam in expected}
    elapsed = time.monotonic() - start
    legs = []
    for lam, target in expected.items():
        ok = abs(measured[lam] - target) <= 0.05
        _report(f"02 critical-drive lambda={lam:g}", ok,
                f"measured {measured[lam]:.4f}, reference {target}")
        legs.append(ok)
    ok_time = elapsed < 60.0
    assert all(legs) and ok_time, (
        f"bisected regrowth onsets {measured} vs reference values {expected} (tol 0.05); "
        f"runtime {elapsed:.1f}s. The reference determinations sit ~1.5% above the exact "
        f"onset of in-window trace-distance regrowth that this detector locates."
    )


def test_criterion_03_no_speedup_plateau():
    worst = 0.0
    for drive in range(6):
        ratio = qslt_pure(PhysicalParams(3.0, float(drive)), 1.0).ratio
        worst = max(worst, abs(ratio - 1.0))
    ok = worst <= 1e-6
    assert _report("03 no-speedup-plateau", ok, f"max |ratio-1| = {worst:.2e}"), worst


def test_criterion_04_monotone_speedup():
    ratios = [qslt_pure(PhysicalParams(3.0, d), 1.0).ratio for d in (6.0, 8.0, 10.0, 14.0, 20.0)]
    ok = all(b < a for a, b in zip(ratios, ratios[1:]))
    assert _report("04 monotone-speedup", ok, "ratios " + ", ".join(f"{r:.4f}" for r in ratios)), ratios


def test_criterion_05_closed_form_identity():
    worst = 0.0
    for lam in WIDTH_GRID:
        for drive in DRIVE_GRID:
            params = PhysicalParams(lam, drive)
            gap = abs(qslt_pure(params, 1.0).tau_qsl - qslt_identity(params, 1.0))
            worst = max(worst, gap)
    ok = worst < 1e-6
    assert _report("05 closed-form-identity", ok, f"max gap {worst:.2e}"), worst


def test_criterion_06_transition_coincidence():
    legs = []
    gaps = {}
    for lam in (3.0, 6.0, 9.0):
        n_onset = critical_drive_strength(lam, 1.0)
        r_onset = speedup_onset_drive_strength(lam, 1.0)
        gaps[lam] = abs(n_onset - r_onset)
        ok = gaps[lam] <= 2e-3
        _report(f"06 transition-coincidence lambda={lam:g}", ok, f"gap {gaps[lam]:.2e}")
        legs.append(ok)
    assert all(legs), (
        f"onset gaps {gaps} (tol 2e-3). The regrowth indicator fires at measure > 1e-10 while "
        f"the ratio indicator fires at ratio < 1 - 1e-6; near the tangency the measure grows "
        f"like (drive - onset)^(3/2), so the finite 1e-6 departure threshold lags the regrowth "
        f"onset by an amount that grows with the spectral width and exceeds 2e-3 at width 9."
    )


def test_criterion_07_window_crossover(window_sweep):
    legs = []
    for drive, rows in window_sweep.items():
        taus = np.array([r.tau_window_start for r in rows])
        ratios = np.array([r.tau_qsl_ratio for r in rows])
        pops = 1.0 - np.array([r.population_deficit for r in rows])
        tau_min = taus[int(np.argmin(ratios))]
        below = np.nonzero(pops <= 0.5)[0]
        assert below.size, f"population never reaches 0.5 for drive {drive}"
        tau_cross = taus[below[0]]
        ok = abs(tau_min - tau_cross) <= 5e-3 + 1e-12
        _report(f"07 window-crossover drive={drive:g}", ok,
                f"argmin {tau_min:.3f} vs crossing {tau_cross:.3f}")
        legs.append(ok)
    assert all(legs)


def test_criterion_08_slope_ordering(window_sweep):
    # |d tau_QSL / d tau| during the speed-up phase shrinks as the drive grows
    step = 5e-3
    legs = []
    for tau_probe in (0.1, 0.2, 0.3, 0.4):
        slopes = []
        for drive in (0.0, 2.0, 4.0):
            rows = window_sweep[drive]
            taus = np.array([r.tau_window_start for r in rows])
            vals = np.array([r.tau_qsl_ratio for r in rows])
            i = int(np.argmin(np.abs(taus - tau_probe)))
            slopes.append((vals[i + 1] - vals[i - 1]) / (2 * step))
        ok = abs(slopes[0]) > abs(slopes[1]) > abs(slopes[2]) and all(s < 0 for s in slopes)
        _report(f"08 slope-ordering tau={tau_probe:g}", ok,
                "slopes " + ", ".join(f"{s:.3f}" for s in slopes))
        legs.append(ok)
    assert all(legs)


def test_criterion_09_blp_optimality():
    params = PhysicalParams(3.0, 8.0)
    window = (0.0, 1.0)
    opt = blp_measure(params, optimal_pair(), window).measure
    best = maximize_blp(params, window, n_samples=1000, seed=20260811)
    ok = best.measure <= opt + 1e-9
    # the best sampled pair hugs the antipodal population pair, so its
    # distance trajectory is the population curve up to normalization
    dp = abs(best.pair.first.p_plus - best.pair.second.p_plus)
    ts = np.linspace(0.0, 1.0, 201)
    u = population(params, ts)
    traj = np.array([
        trace_distance(evolve_density(params, best.pair.first, float(t)),
                       evolve_density(params, best.pair.second, float(t)))
        for t in ts
    ])
    d0 = traj[0]
    scaled_dev = float(np.max(np.abs(traj / d0 - u)))
    ok = ok and dp > 0.9 and scaled_dev < 0.02
    assert _report("09 blp-optimality", ok,
                   f"best {best.measure:.6e} vs optimal {opt:.6e}, traj dev {scaled_dev:.1e}"), (
        best.measure, opt, dp, scaled_dev)


def test_criterion_10_structural_invariants():
    rng = np.random.default_rng(424242)
    n_param_sets = 100
    n_times = 100  # -> 1e4 randomized (params, t) cases
    worst_branch = worst_bound = 0.0
    max_abs_eps = 0.0
    min_eig = 0.0
    worst_contraction = -1.0
    for case in range(n_param_sets):
        lam = float(np.exp(rng.uniform(np.log(0.02), np.log(10.0))))
        drive = float(rng.uniform(0.0, 50.0))
        params = PhysicalParams(lam, drive)
        ts = rng.uniform(0.0, 10.0, size=n_times)
        ts.sort()

        # branch invariance of the amplitude under D -> -D
        a = complex(lam, -params.detuning)
        rate = complex_rate(params)
        vals = {}
        for sign in (1.0, -1.0):
            z = 0.5 * sign * rate * ts
            small = np.abs(z) < 1e-6
            zsafe = np.where(small, 1.0, z)
            sinhc = np.where(small, 1.0 + z * z / 6.0, np.sinh(zsafe) / zsafe)
            vals[sign] = np.exp(-0.5 * a * ts) * (np.cosh(z) + a * (0.5 * ts) * sinhc)
        worst_branch = max(worst_branch, float(np.abs(vals[1.0] - vals[-1.0]).max()))

        eps = amplitude(params, ts)
        max_abs_eps = max(max_abs_eps, float(np.abs(eps).max()))

        # contraction of the trace distance for a random pair (the pool mixes
        # antipodal pure pairs with general mixed pairs)
        pair = sample_state_pairs(10, int(rng.integers(1 << 31)))[case % 10]
        d0 = trace_distance(pair.first, pair.second)
        for t in ts[::10]:
            da = evolve_density(params, pair.first, float(t))
            db = evolve_density(params, pair.second, float(t))
            worst_contraction = max(worst_contraction, trace_distance(da, db) - d0)
            ev = np.linalg.eigvalsh(da.matrix())
            min_eig = min(min_eig, float(ev.min()))

        # Schatten-norm ordering of the generator: p = 1 >= p = 2 >= p = inf
        s1, s2 = generator_norms(params, pair.first, float(ts[n_times // 2]))
        norms = (s1 + s2, np.hypot(s1, s2), max(s1, s2))
        worst_bound = max(worst_bound, norms[1] - norms[0], norms[2] - norms[1])

    # report-level bound ordering and ratio cap on a parameter subsample
    for _ in range(100):
        params = PhysicalParams(float(np.exp(rng.uniform(np.log(0.02), np.log(10.0)))),
                                float(rng.uniform(0.0, 50.0)))
        rep = qslt_pure(params, float(rng.uniform(0.2, 2.0)))
        worst_bound = max(worst_bound, rep.bound_p2 - rep.bound_pinf, rep.bound_p1 - rep.bound_p2)
        assert rep.ratio <= 1.0 + 1e-9

    ok = (worst_branch <= 1e-12 and max_abs_eps <= 1.0 + 1e-9
          and worst_contraction <= 1e-12 and min_eig >= -1e-12 and worst_bound <= 1e-12)
    assert _report(
        "10 structural-invariants", ok,
        f"branch {worst_branch:.1e}, |eps|-1 {max_abs_eps - 1.0:.1e}, "
        f"contraction {worst_contraction:.1e}, min eig {min_eig:.1e}"), (
        worst_branch, max_abs_eps, worst_contraction, min_eig, worst_bound)


def test_shape_strong_coupling_plateau():
    # ratio pinned at 1 (variation < 1e-6) across the moderate-drive region
    # below the strong-coupling onset near 1.58, then a non-monotonic decline
    rows = sweep_omega(0.05, 1.0, (0.0, 1.5), 16)
    flat = max(abs(r.tau_qsl_ratio - 1.0) for r in rows)
    tail = sweep_omega(0.05, 1.0, (2.0, 30.0), 57)
    ratios = np.array([r.tau_qsl_ratio for r in tail])
    drops = ratios.min() < 0.1
    rises = int(np.sum(np.diff(ratios) > 1e-6))
    ok = flat < 1e-6 and drops and rises >= 2
    assert _report("11 strong-coupling-plateau", ok,
                   f"flatness {flat:.1e}, min ratio {ratios.min():.3f}, {rises} rises"), (
        flat, ratios.min(), rises)


def test_shape_interior_nonmarkovianity_maximum():
    rows = sweep_omega(3.0, 1.0, (0.0, 40.0), 81)
    measures = np.array([r.blp_measure for r in rows])
    peak = int(np.argmax(measures))
    ok = 0 < peak < len(measures) - 1 and measures[peak] > measures[-1] > 0.0
    assert _report("12 interior-blp-maximum", ok,
                   f"peak {measures[peak]:.4f} at drive {rows[peak].drive_strength:g}"), (
        peak, measures[peak], measures[-1])
