"""Closed-form dynamics of a classically driven qubit in a Lorentzian reservoir.

Everything is dimensionless: rates and frequencies are in units of the
reservoir coupling rate R (set to 1), times in units of 1/R.  The driving
field enters the dissipative dynamics only through the effective detuning
delta = 2*Omega + omega_0 - omega_c between the dressed-state splitting and
the reservoir center.
"""

from dataclasses import dataclass

import numpy as np

# grid intervals per unit time; resolves the population oscillation period
# 2*pi/|Im D| with >100 samples even at drive strengths ~50
GRID_DENSITY = 2000

# below |D*t| = 1e-6 the cosh/sinh forms are evaluated by series to avoid 0/0
_SERIES_CUTOFF = 1e-6

_POSITIVITY_TOL = 1e-12


@dataclass(frozen=True)
class PhysicalParams:
    """Model parameters, all in units of the reservoir coupling rate.

    spectral_width   -- Lorentzian width lambda (> 0); weak coupling is
                        spectral_width > 2, strong coupling < 2
    drive_strength   -- classical driving amplitude Omega (>= 0)
    qubit_freq       -- bare transition frequency omega_0
    reservoir_center -- center frequency omega_c of the Lorentzian

    The defaults put the qubit in resonance with the reservoir center
    (qubit_freq == reservoir_center), where the detuning is exactly
    2*drive_strength.
    """

    spectral_width: float
    drive_strength: float = 0.0
    qubit_freq: float = 0.0
    reservoir_center: float = 0.0

    def __post_init__(self):
        if not self.spectral_width > 0:
            raise ValueError(f"spectral_width must be > 0, got {self.spectral_width}")
        if self.drive_strength < 0:
            raise ValueError(f"drive_strength must be >= 0, got {self.drive_strength}")

    @property
    def effective_freq(self) -> float:
        """Dressed-state splitting 2*Omega + omega_0."""
        return 2.0 * self.drive_strength + self.qubit_freq

    @property
    def detuning(self) -> float:
        """Effective detuning from the reservoir center."""
        return self.effective_freq - self.reservoir_center


@dataclass(frozen=True)
class DressedDensityMatrix:
    """Qubit state in the dressed basis {|+>, |->}.

    Stores the |+> population and the upper off-diagonal element; the |->
    population is implied by unit trace.
    """

    p_plus: float
    coherence: complex = 0j

    def __post_init__(self):
        if not 0.0 <= self.p_plus <= 1.0:
            raise ValueError(f"p_plus must lie in [0, 1], got {self.p_plus}")
        if abs(self.coherence) ** 2 > self.p_plus * (1.0 - self.p_plus) + _POSITIVITY_TOL:
            raise ValueError("coherence violates positivity: |c|^2 > p(1-p)")

    @classmethod
    def plus_state(cls) -> "DressedDensityMatrix":
        return cls(1.0, 0j)

    @classmethod
    def minus_state(cls) -> "DressedDensityMatrix":
        return cls(0.0, 0j)

    @classmethod
    def maximally_mixed(cls) -> "DressedDensityMatrix":
        return cls(0.5, 0j)

    @classmethod
    def from_bloch(cls, x: float, y: float, z: float) -> "DressedDensityMatrix":
        """State with Bloch vector (x, y, z); |+> is the north pole."""
        return cls(0.5 * (1.0 + z), 0.5 * complex(x, -y))

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.p_plus, self.coherence],
                [np.conj(self.coherence), 1.0 - self.p_plus],
            ],
            dtype=complex,
        )

    def purity(self) -> float:
        return self.p_plus**2 + (1.0 - self.p_plus) ** 2 + 2.0 * abs(self.coherence) ** 2

    def is_pure(self, tol: float = 1e-9) -> bool:
        return self.purity() > 1.0 - tol


@dataclass(frozen=True)
class AmplitudeTrace:
    """Sampled decoherence amplitude and derived quantities on a time grid.

    population is |amplitude|^2 (the |+> population for a pure |+> start) and
    sigma is its time derivative 2*Re(conj(amplitude)*amplitude_rate).
    """

    times: np.ndarray
    amplitude: np.ndarray
    amplitude_rate: np.ndarray
    population: np.ndarray
    sigma: np.ndarray


def spectral_density(params: PhysicalParams, omega) -> np.ndarray | float:
    """Lorentzian reservoir spectral density at frequency omega.

    Normalized so that its integral over all frequencies equals
    spectral_width / 2, the zero-delay value of the reservoir correlation
    function; the peak value at the center frequency is 1/(2*pi) for every
    width.
    """
    lam = params.spectral_width
    return (0.5 / np.pi) * lam * lam / ((np.asarray(omega) - params.reservoir_center) ** 2 + lam * lam)


def complex_rate(params: PhysicalParams) -> complex:
    """Complex decay rate D entering the amplitude solution.

    Principal branch of sqrt(lam^2 - 2*lam - delta^2 - 2i*delta*lam); the
    amplitude is an even function of D, so the branch choice is immaterial.
    """
    lam = params.spectral_width
    delta = params.detuning
    # +0.0 normalizes a signed zero so delta = 0 stays on the principal branch
    return complex(np.sqrt(complex(lam * lam - 2.0 * lam - delta * delta, -2.0 * delta * lam + 0.0)))


def _check_times(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("time must be non-negative")
    return t


def _amplitude_parts(params: PhysicalParams, t: np.ndarray):
    """(epsilon, epsilon_dot) on an array of times, series-safe near D*t = 0."""
    lam = params.spectral_width
    a = complex(lam, -params.detuning)
    D = complex_rate(params)
    z = 0.5 * D * t
    small = np.abs(z) < _SERIES_CUTOFF
    zsafe = np.where(small, 1.0, z)
    # sinh(z)/z, continued through z = 0
    sinhc = np.where(small, 1.0 + z * z / 6.0, np.sinh(zsafe) / zsafe)
    damp = np.exp(-0.5 * a * t)
    eps = damp * (np.cosh(z) + a * (0.5 * t) * sinhc)
    # d(eps)/dt = -(lam/D) e^{-a t/2} sinh(D t/2), using D^2 - a^2 = -2*lam
    eps_dot = -lam * (0.5 * t) * sinhc * damp
    return eps, eps_dot


def amplitude(params: PhysicalParams, t) -> np.ndarray | complex:
    """Decoherence amplitude epsilon(t); epsilon(0) = 1 and |epsilon| <= 1."""
    t = _check_times(t)
    eps, _ = _amplitude_parts(params, t)
    return eps if eps.shape else complex(eps)


def amplitude_derivative(params: PhysicalParams, t) -> np.ndarray | complex:
    """Time derivative of the decoherence amplitude."""
    t = _check_times(t)
    _, eps_dot = _amplitude_parts(params, t)
    return eps_dot if eps_dot.shape else complex(eps_dot)


def population(params: PhysicalParams, t) -> np.ndarray | float:
    """|epsilon(t)|^2, the |+> population for a pure |+> start."""
    t = _check_times(t)
    eps, _ = _amplitude_parts(params, t)
    out = eps.real**2 + eps.imag**2
    return out if out.shape else float(out)


def evolve_density(params: PhysicalParams, rho0: DressedDensityMatrix, t) -> DressedDensityMatrix:
    """Propagate a dressed-basis state: the |+> population scales by
    |epsilon|^2 and the coherence by epsilon."""
    t = _check_times(t)
    if t.shape:
        raise ValueError("evolve_density expects a scalar time")
    eps, _ = _amplitude_parts(params, t)
    eps = complex(eps)
    u = eps.real**2 + eps.imag**2
    return DressedDensityMatrix(rho0.p_plus * u, rho0.coherence * eps)


def amplitude_trace(params: PhysicalParams, t_end: float, n_points: int | None = None) -> AmplitudeTrace:
    """Sample amplitude, rate, population and sigma on a uniform grid.

    The default grid has GRID_DENSITY intervals per unit time (at least 2000
    in total), enough to resolve the fastest population oscillations over the
    supported drive range.
    """
    if not t_end > 0:
        raise ValueError(f"t_end must be > 0, got {t_end}")
    if n_points is None:
        n_points = max(int(round(t_end * GRID_DENSITY)), GRID_DENSITY) + 1
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    times = np.linspace(0.0, t_end, n_points)
    eps, eps_dot = _amplitude_parts(params, times)
    pop = eps.real**2 + eps.imag**2
    sigma = 2.0 * (np.conj(eps) * eps_dot).real
    return AmplitudeTrace(times, eps, eps_dot, pop, sigma)
