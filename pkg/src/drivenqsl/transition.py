"""Critical driving strength of the Markovian to non-Markovian transition,
plus the parameter sweeps behind the standard figures.

The transition indicator is the window non-Markovianity N exceeding a tiny
threshold; N is additive-positive and numerically cleaner near onset than
the speed-limit ratio.  The equivalence of the two onsets is a tested
property, not an assumption.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distinguish import blp_measure, optimal_pair
from .model import PhysicalParams, population
from .speedlimit import qslt_pure, qslt_window

BLP_ONSET_THRESHOLD = 1e-10
RATIO_DEPARTURE_TOL = 1e-6
DEFAULT_RESOLUTION = 1e-3
DEFAULT_DRIVE_CAP = 1e3


class NoTransitionError(RuntimeError):
    """No Markovian to non-Markovian transition found below the drive cap."""


@dataclass(frozen=True)
class SweepRow:
    """One record of a parameter sweep; fields that a sweep does not produce
    are left as None."""

    spectral_width: float
    drive_strength: float
    tau_window_start: float | None = None
    tau_qsl_ratio: float | None = None
    blp_measure: float | None = None
    population_deficit: float | None = None


def _params(spectral_width, drive_strength, qubit_freq, reservoir_center):
    return PhysicalParams(spectral_width, drive_strength, qubit_freq, reservoir_center)


def _bisect_onset(indicator, resolution: float, drive_cap: float) -> float:
    """Smallest drive strength turning the indicator on, to within resolution;
    bracket found by doubling from 1."""
    if indicator(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while not indicator(hi):
        lo, hi = hi, 2.0 * hi
        if hi > drive_cap:
            raise NoTransitionError(f"no transition in range (drive strength up to {drive_cap})")
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if indicator(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def critical_drive_strength(
    spectral_width: float,
    tau_D: float,
    resolution: float = DEFAULT_RESOLUTION,
    threshold: float = BLP_ONSET_THRESHOLD,
    drive_cap: float = DEFAULT_DRIVE_CAP,
    qubit_freq: float = 0.0,
    reservoir_center: float = 0.0,
) -> float:
    """Drive strength at which the window [0, tau_D] first shows
    trace-distance regrowth (N > threshold)."""
    if not resolution > 0:
        raise ValueError(f"resolution must be > 0, got {resolution}")

    def indicator(drive):
        p = _params(spectral_width, drive, qubit_freq, reservoir_center)
        return blp_measure(p, optimal_pair(), (0.0, tau_D)).measure > threshold

    return _bisect_onset(indicator, resolution, drive_cap)


def speedup_onset_drive_strength(
    spectral_width: float,
    tau_D: float,
    resolution: float = DEFAULT_RESOLUTION,
    departure_tol: float = RATIO_DEPARTURE_TOL,
    drive_cap: float = DEFAULT_DRIVE_CAP,
    qubit_freq: float = 0.0,
    reservoir_center: float = 0.0,
) -> float:
    """Drive strength at which the speed-limit ratio first departs from 1
    (drops below 1 - departure_tol)."""
    if not resolution > 0:
        raise ValueError(f"resolution must be > 0, got {resolution}")

    def indicator(drive):
        p = _params(spectral_width, drive, qubit_freq, reservoir_center)
        return qslt_pure(p, tau_D).ratio < 1.0 - departure_tol

    return _bisect_onset(indicator, resolution, drive_cap)


def _map_ordered(fn, items, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def sweep_omega(
    spectral_width: float,
    tau_D: float,
    omega_range: tuple = (0.0, 20.0),
    n_points: int = 201,
    qubit_freq: float = 0.0,
    reservoir_center: float = 0.0,
    workers: int = 1,
) -> list:
    """Speed-limit ratio, non-Markovianity and population deficit on a uniform
    drive-strength grid."""
    lo, hi = omega_range
    if not hi > lo:
        raise ValueError(f"omega range must be increasing, got {omega_range}")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    drives = np.linspace(lo, hi, n_points)

    def row(drive):
        p = _params(spectral_width, float(drive), qubit_freq, reservoir_center)
        report = qslt_pure(p, tau_D)
        measure = blp_measure(p, optimal_pair(), (0.0, tau_D)).measure
        return SweepRow(
            spectral_width=spectral_width,
            drive_strength=float(drive),
            tau_qsl_ratio=report.ratio,
            blp_measure=measure,
            population_deficit=1.0 - population(p, tau_D),
        )

    return _map_ordered(row, drives, workers)


def sweep_window(
    spectral_width: float,
    drive_strengths,
    tau_D: float,
    tau_range: tuple = (0.0, 5.0),
    n_points: int = 501,
    qubit_freq: float = 0.0,
    reservoir_center: float = 0.0,
    workers: int = 1,
) -> list:
    """Windowed speed limit and start-time population on a uniform grid of
    window start times, for each drive strength; rows are ordered by drive
    then by start time."""
    lo, hi = tau_range
    if not hi > lo:
        raise ValueError(f"tau range must be increasing, got {tau_range}")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    taus = np.linspace(lo, hi, n_points)

    rows = []
    for drive in drive_strengths:
        p = _params(spectral_width, float(drive), qubit_freq, reservoir_center)

        def row(tau, p=p, drive=drive):
            return SweepRow(
                spectral_width=spectral_width,
                drive_strength=float(drive),
                tau_window_start=float(tau),
                tau_qsl_ratio=qslt_window(p, float(tau), tau_D) / tau_D,
                population_deficit=1.0 - population(p, float(tau)),
            )

        rows.extend(_map_ordered(row, taus, workers))
    return rows
