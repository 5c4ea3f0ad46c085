"""Quantum-speed-limit times for the driven qubit.

qslt_pure evaluates the unified Mandelstam-Tamm / Margolus-Levitin bound for
a pure |+> start over [0, tau_D]: tau_QSL = sin^2(Bures angle) / Lambda_p
with Lambda_p the time-averaged Schatten p-norm of the generator.  For this
model the generator's two singular values are equal, so the p = infinity
(operator-norm, ML-type) bound is always the sharpest and the three bounds
sit in the fixed proportion 1 : 1/sqrt(2) : 1/2.

qslt_window evaluates the mixed-state bound for an evolution that starts
from the already-decayed state at time tau and runs for another tau_D.
"""

from dataclasses import dataclass

import numpy as np

from .distinguish import blp_measure, optimal_pair, sigma_rate, sigma_segments
from .model import DressedDensityMatrix, PhysicalParams, amplitude_derivative, population
from .numerics import adaptive_simpson

QUAD_TOL = 1e-10
_PURITY_TOL = 1e-9


@dataclass(frozen=True)
class QsltReport:
    """Speed-limit bound from a pure |+> start over a driving window.

    tau_qsl is the largest (sharpest) of the three Schatten bounds; ratio is
    tau_qsl / tau_D, equal to 1 exactly when the window contains no
    trace-distance regrowth.  no_evolution flags a window where the state
    never moves (NaN ratio instead of 0/0).
    """

    tau_qsl: float
    bound_p1: float
    bound_p2: float
    bound_pinf: float
    bures_angle: float | None
    ratio: float
    no_evolution: bool = False


def bures_angle(pure_start: DressedDensityMatrix, evolved: DressedDensityMatrix) -> float:
    """Bures angle arccos sqrt(<phi0|rho|phi0>) between a pure start and an
    evolved state."""
    if not pure_start.is_pure(_PURITY_TOL):
        raise ValueError("bures_angle requires a pure start state")
    p0, c0 = pure_start.p_plus, pure_start.coherence
    fidelity = (
        p0 * evolved.p_plus
        + (1.0 - p0) * (1.0 - evolved.p_plus)
        + 2.0 * (np.conj(c0) * evolved.coherence).real
    )
    return float(np.arccos(np.sqrt(np.clip(fidelity, 0.0, 1.0))))


def generator_norms(params: PhysicalParams, rho0: DressedDensityMatrix, t) -> tuple:
    """Singular values of the generator output rho_dot at time t.

    rho_dot is Hermitian and traceless with diagonal +-p_plus(0)*sigma(t) and
    off-diagonal coherence(0)*epsilon_dot(t), so both singular values equal
    the root-sum-square of those two magnitudes.
    """
    diag = rho0.p_plus * sigma_rate(params, t)
    off = abs(rho0.coherence) * abs(amplitude_derivative(params, t))
    s = float(np.hypot(diag, off))
    return (s, s)


def _abs_sigma_integral(params: PhysicalParams, t0: float, t1: float) -> float:
    """int |sigma| dt, integrating each constant-sign segment separately so
    the |.| kink never meets the quadrature."""
    boundaries, signs = sigma_segments(params, (t0, t1))
    f = lambda ts: sigma_rate(params, ts)
    total = 0.0
    for i, sgn in enumerate(signs):
        if sgn == 0:
            continue
        total += abs(adaptive_simpson(f, boundaries[i], boundaries[i + 1], QUAD_TOL))
    return total


def qslt_pure(params: PhysicalParams, tau_D: float) -> QsltReport:
    """Speed-limit report for a pure |+> start driven for tau_D."""
    if not tau_D > 0:
        raise ValueError(f"tau_D must be > 0, got {tau_D}")
    p_end = population(params, tau_D)
    sin2_b = 1.0 - p_end
    angle = float(np.arccos(np.sqrt(np.clip(p_end, 0.0, 1.0))))
    avg_abs_sigma = _abs_sigma_integral(params, 0.0, tau_D) / tau_D
    if avg_abs_sigma == 0.0:
        return QsltReport(0.0, 0.0, 0.0, 0.0, angle, float("nan"), no_evolution=True)
    # Schatten p = 1, 2, inf norms of the generator: 2|sigma|, sqrt(2)|sigma|, |sigma|
    bound_pinf = sin2_b / avg_abs_sigma
    bound_p2 = bound_pinf / np.sqrt(2.0)
    bound_p1 = 0.5 * bound_pinf
    return QsltReport(
        tau_qsl=bound_pinf,
        bound_p1=bound_p1,
        bound_p2=bound_p2,
        bound_pinf=bound_pinf,
        bures_angle=angle,
        ratio=bound_pinf / tau_D,
    )


def qslt_identity(params: PhysicalParams, tau_D: float) -> float:
    """Closed-form speed limit tau_D (1-P) / (2N + 1 - P) from the window
    non-Markovianity N and the final population P; NaN when the state never
    evolves (P = 1, N = 0)."""
    if not tau_D > 0:
        raise ValueError(f"tau_D must be > 0, got {tau_D}")
    measure = blp_measure(params, optimal_pair(), (0.0, tau_D)).measure
    p_end = population(params, tau_D)
    denom = 2.0 * measure + 1.0 - p_end
    if denom == 0.0:
        return float("nan")
    return tau_D * (1.0 - p_end) / denom


def qslt_window(params: PhysicalParams, tau: float, tau_D: float) -> float:
    """Mixed-state speed limit for the evolution from time tau to tau + tau_D
    of a trajectory started in |+>:

        tau_D |(1 - 2 P_tau)(P_tau - P_{tau+tau_D})| / int_tau^{tau+tau_D} |dP/dt| dt

    The denominator quadrature is split at the sign changes of dP/dt.  A
    window with no evolution returns 0.
    """
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    if not tau_D > 0:
        raise ValueError(f"tau_D must be > 0, got {tau_D}")
    denom = _abs_sigma_integral(params, tau, tau + tau_D)
    if denom == 0.0:
        return 0.0
    p_start = population(params, tau)
    p_end = population(params, tau + tau_D)
    return tau_D * abs((1.0 - 2.0 * p_start) * (p_start - p_end)) / denom
