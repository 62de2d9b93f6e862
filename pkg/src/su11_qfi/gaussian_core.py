"""Two-mode Gaussian states and the interferometer's preparation transforms.

Conventions (fixed package-wide):
    * hbar = 1, quadratures x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)),
      so the vacuum covariance matrix is identity/2 and a coherent amplitude
      alpha displaces the mean by sqrt(2)*(Re alpha, Im alpha).
    * Vectors and matrices are ordered (x_a, p_a, x_b, p_b).
    * The nonlinear beam splitter (two-mode squeezer) acts on the mode
      operators as a' = cosh(g) a - e^{i theta} sinh(g) b^dag, and
      symmetrically on b.  The sign and phase placement matter: the
      interference terms of the Fisher information depend on them.

All operations are pure functions on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import DomainError, StateValidityError

TWO_PI = 2.0 * math.pi

#: Guard against cosh(4g) / cosh(4r) overflowing double precision headroom.
MAX_STRENGTH = 20.0

#: Symplectic form for (x_a, p_a, x_b, p_b); [R_i, R_j] = i * OMEGA_ij.
OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)
OMEGA.setflags(write=False)

Mode = Literal["a", "b"]

_SYMMETRY_ATOL = 1e-12
_PURITY_ATOL = 1e-9


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ComplexAmplitude:
    """Coherent amplitude as modulus and phase, with N = modulus**2 photons."""

    modulus: float
    phase: float = 0.0

    def __post_init__(self) -> None:
        modulus = _require_finite("modulus", self.modulus)
        if modulus < 0.0:
            raise DomainError(f"modulus must be non-negative, got {modulus}")
        phase = _require_finite("phase", self.phase) % TWO_PI
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "phase", phase)

    @classmethod
    def from_complex(cls, value: complex) -> "ComplexAmplitude":
        return cls(abs(value), math.atan2(value.imag, value.real))

    @property
    def value(self) -> complex:
        return self.modulus * complex(math.cos(self.phase), math.sin(self.phase))

    @property
    def mean_photons(self) -> float:
        return self.modulus**2


@dataclass(frozen=True)
class NbsParams:
    """Nonlinear-beam-splitter strength g and pump phase theta_g."""

    gain: float
    pump_phase: float = 0.0

    def __post_init__(self) -> None:
        gain = _require_finite("gain", self.gain)
        if gain < 0.0:
            raise DomainError(f"gain must be non-negative, got {gain}")
        if gain > MAX_STRENGTH:
            raise DomainError(f"gain {gain} exceeds overflow guard {MAX_STRENGTH}")
        pump_phase = _require_finite("pump_phase", self.pump_phase)
        object.__setattr__(self, "gain", gain)
        object.__setattr__(self, "pump_phase", pump_phase)


@dataclass(frozen=True)
class SqueezeParams:
    """Single-mode squeezing strength r and phase theta for S = exp[(c* b^2 - c b^dag^2)/2]."""

    r: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        r = _require_finite("r", self.r)
        if r < 0.0:
            raise DomainError(f"r must be non-negative, got {r}")
        if r > MAX_STRENGTH:
            raise DomainError(f"r {r} exceeds overflow guard {MAX_STRENGTH}")
        theta = _require_finite("theta", self.theta)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", theta)

    @property
    def mean_photons(self) -> float:
        return math.sinh(self.r) ** 2


@dataclass(frozen=True)
class TwoCoherent:
    """Coherent state in mode a and coherent state in mode b."""

    alpha: ComplexAmplitude
    beta: ComplexAmplitude

    @property
    def mean_photons(self) -> float:
        return self.alpha.mean_photons + self.beta.mean_photons


@dataclass(frozen=True)
class CoherentSqueezed:
    """Coherent state in mode a and squeezed vacuum in mode b."""

    alpha: ComplexAmplitude
    squeeze: SqueezeParams

    @property
    def mean_photons(self) -> float:
        return self.alpha.mean_photons + self.squeeze.mean_photons


InputSpec = Union[TwoCoherent, CoherentSqueezed]


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Williamson eigenvalues of a 4x4 covariance matrix, ascending.

    Computed from the Hermitian matrix i sqrt(V) Omega sqrt(V), which is
    similar to i Omega V but keeps the eigenproblem well conditioned at
    large squeezing.
    """
    w, q = np.linalg.eigh(cov)
    sqrt_v = (q * np.sqrt(np.clip(w, 0.0, None))) @ q.T
    h = 1j * (sqrt_v @ OMEGA @ sqrt_v)
    nu = np.linalg.eigvalsh(h)
    return np.sort(nu)[2:]


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Two-mode Gaussian state: quadrature mean vector and covariance matrix.

    Construction validates symmetry, positive definiteness and the
    uncertainty bound (symplectic eigenvalues >= 1/2 up to numerical slack
    that scales with the matrix norm).  Arrays are stored read-only.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        mean = np.array(self.mean, dtype=float)
        cov = np.array(self.cov, dtype=float)
        if mean.shape != (4,):
            raise StateValidityError(f"mean must have shape (4,), got {mean.shape}")
        if cov.shape != (4, 4):
            raise StateValidityError(f"cov must have shape (4, 4), got {cov.shape}")
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(cov)):
            raise StateValidityError("state moments must be finite")
        asym = np.max(np.abs(cov - cov.T))
        if asym > _SYMMETRY_ATOL:
            raise StateValidityError(f"covariance asymmetry {asym:.3e} exceeds {_SYMMETRY_ATOL}")
        cov = 0.5 * (cov + cov.T)
        scale = max(1.0, float(np.linalg.norm(cov, 2)))
        if np.linalg.eigvalsh(cov)[0] <= -1e-12 * scale:
            raise StateValidityError("covariance matrix is not positive definite")
        nu_min = symplectic_eigenvalues(cov)[0]
        slack = max(_PURITY_ATOL, 5e-14 * scale)
        if nu_min < 0.5 - slack:
            raise StateValidityError(
                f"uncertainty violation: symplectic eigenvalue {nu_min!r} < 1/2"
            )
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    def symplectic_eigenvalues(self) -> np.ndarray:
        return symplectic_eigenvalues(self.cov)

    def is_pure(self, atol: float = 1e-6) -> bool:
        return bool(np.all(np.abs(self.symplectic_eigenvalues() - 0.5) <= atol))


def vacuum() -> GaussianState:
    """Two-mode vacuum: zero mean, covariance identity/2."""
    return GaussianState(np.zeros(4), 0.5 * np.eye(4))


def _displacement_mean(alpha: ComplexAmplitude, beta_like: ComplexAmplitude | None) -> np.ndarray:
    a = alpha.value
    b = beta_like.value if beta_like is not None else 0j
    return math.sqrt(2.0) * np.array([a.real, a.imag, b.real, b.imag])


def squeezed_vacuum_cov(sq: SqueezeParams) -> np.ndarray:
    """Single-mode covariance block of S(r, theta)|0> with S = exp[(c* b^2 - c b^dag^2)/2].

    At theta = 0 the x quadrature is squeezed: var(x) = e^{-2r}/2.
    """
    ch = math.cosh(2.0 * sq.r)
    sh = math.sinh(2.0 * sq.r)
    ct = math.cos(sq.theta)
    st = math.sin(sq.theta)
    return 0.5 * np.array([[ch - ct * sh, -st * sh], [-st * sh, ch + ct * sh]])


def prepare_input(spec: InputSpec) -> GaussianState:
    """Gaussian state of the interferometer input for either input family."""
    if isinstance(spec, TwoCoherent):
        return GaussianState(_displacement_mean(spec.alpha, spec.beta), 0.5 * np.eye(4))
    if isinstance(spec, CoherentSqueezed):
        mean = _displacement_mean(spec.alpha, None)
        cov = 0.5 * np.eye(4)
        cov[2:, 2:] = squeezed_vacuum_cov(spec.squeeze)
        return GaussianState(mean, cov)
    raise TypeError(f"unsupported input spec: {type(spec).__name__}")


def nbs_symplectic(params: NbsParams) -> np.ndarray:
    """Symplectic matrix of a' = cosh(g) a - e^{i theta_g} sinh(g) b^dag."""
    c = math.cosh(params.gain)
    s = math.sinh(params.gain)
    ct = math.cos(params.pump_phase)
    st = math.sin(params.pump_phase)
    return np.array(
        [
            [c, 0.0, -s * ct, -s * st],
            [0.0, c, -s * st, s * ct],
            [-s * ct, -s * st, c, 0.0],
            [-s * st, s * ct, 0.0, c],
        ]
    )


def apply_nbs(state: GaussianState, params: NbsParams) -> GaussianState:
    """Send a state through the nonlinear beam splitter (two-mode squeezer)."""
    s_mat = nbs_symplectic(params)
    return GaussianState(s_mat @ state.mean, s_mat @ state.cov @ s_mat.T)


def phase_rotate(state: GaussianState, mode: Mode, phi: float) -> GaussianState:
    """Apply the phase shift e^{i phi n} to one mode (a -> e^{i phi} a)."""
    if mode not in ("a", "b"):
        raise DomainError(f"mode must be 'a' or 'b', got {mode!r}")
    phi = _require_finite("phi", phi)
    c, s = math.cos(phi), math.sin(phi)
    rot = np.eye(4)
    k = 0 if mode == "a" else 2
    rot[k : k + 2, k : k + 2] = [[c, -s], [s, c]]
    return GaussianState(rot @ state.mean, rot @ state.cov @ rot.T)
