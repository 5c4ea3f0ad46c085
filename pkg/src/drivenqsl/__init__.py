"""Quantum-speed-limit and non-Markovianity toolkit for a classically driven
qubit coupled to a zero-temperature Lorentzian reservoir.

All rates and frequencies are in units of the reservoir coupling rate, all
times in its inverse.  Non-Markovianity is always measured over the finite
driving window [0, tau_D], not over an infinite horizon.
"""

from .distinguish import (
    BlpResult,
    StatePair,
    blp_measure,
    maximize_blp,
    optimal_pair,
    sample_state_pairs,
    sigma_rate,
    trace_distance,
)
from .model import (
    AmplitudeTrace,
    DressedDensityMatrix,
    PhysicalParams,
    amplitude,
    amplitude_derivative,
    amplitude_trace,
    complex_rate,
    evolve_density,
    population,
    spectral_density,
)
from .oracle import IntegrationError, correlation_kernel, integrate_amplitude
from .speedlimit import QsltReport, bures_angle, generator_norms, qslt_identity, qslt_pure, qslt_window
from .transition import (
    NoTransitionError,
    SweepRow,
    critical_drive_strength,
    speedup_onset_drive_strength,
    sweep_omega,
    sweep_window,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeTrace",
    "BlpResult",
    "DressedDensityMatrix",
    "IntegrationError",
    "NoTransitionError",
    "PhysicalParams",
    "QsltReport",
    "StatePair",
    "SweepRow",
    "amplitude",
    "amplitude_derivative",
    "amplitude_trace",
    "blp_measure",
    "bures_angle",
    "complex_rate",
    "correlation_kernel",
    "critical_drive_strength",
    "evolve_density",
    "generator_norms",
    "integrate_amplitude",
    "maximize_blp",
    "optimal_pair",
    "population",
    "qslt_identity",
    "qslt_pure",
    "qslt_window",
    "sample_state_pairs",
    "sigma_rate",
    "spectral_density",
    "speedup_onset_drive_strength",
    "sweep_omega",
    "sweep_window",
    "trace_distance",
]
