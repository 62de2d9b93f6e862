"""Quantum Fisher information and Cramer-Rao bounds for the interferometer.

Two computation routes live here: the generator-variance evaluation on a
prepared Gaussian state (the phase generator for the sum phase is
(n_a + n_b)/2, so F = Var(n_a + n_b); a single-arm delay has generator n_a
or n_b, so F = 4 Var(n_mode)), and the closed-form expressions for the two
input families.  The single-arm closed forms are stated at the
phase-matched maximum only; the two-arm forms carry the full phase
dependence through cos(theta_alpha + theta_beta - theta_g - pi) for two
coherent inputs and cos(Phi), Phi = theta_varsigma + 2 theta_alpha
- 2 theta_g, for the coherent (x) squeezed family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import DomainError, StateValidityError
from .gaussian_core import GaussianState, MAX_STRENGTH
from .moments import expected_n_squared, photon_moments, variance_of_sum

_PURITY_REJECT_ATOL = 1e-6


class PhaseConfiguration(Enum):
    """Where the phase delay sits: one arm or distributed over both."""

    UPPER_ARM = "upper"
    LOWER_ARM = "lower"
    TWO_ARM = "two-arm"


class ComputationPath(Enum):
    """Which of the three independent routes produced a value."""

    CLOSED_FORM = "closed"
    GENERATOR_VARIANCE = "gaussian"
    FOCK_ORACLE = "oracle"


@dataclass(frozen=True)
class QfiResult:
    """Fisher information (rad^-2) with its Cramer-Rao bound (rad).

    ``qcrb`` is None only in the degenerate fisher == 0 case (vacuum input
    with the amplifier off), where the bound is undefined.
    """

    fisher: float
    qcrb: Optional[float]
    config: PhaseConfiguration
    path: ComputationPath

    def __post_init__(self) -> None:
        if self.fisher < 0.0:
            raise DomainError(f"fisher must be non-negative, got {self.fisher!r}")
        if self.qcrb is not None:
            expected = 1.0 / math.sqrt(self.fisher)
            if abs(self.qcrb - expected) > 1e-12 * expected:
                raise DomainError("qcrb is inconsistent with 1/sqrt(fisher)")


def qcrb(fisher: float) -> float:
    """Phase-estimation lower bound 1/sqrt(F)."""
    if fisher <= 0.0:
        raise DomainError(f"fisher must be positive for a finite bound, got {fisher!r}")
    return 1.0 / math.sqrt(fisher)


def _result(fisher: float, config: PhaseConfiguration, path: ComputationPath) -> QfiResult:
    fisher = max(0.0, float(fisher))
    bound = qcrb(fisher) if fisher > 0.0 else None
    return QfiResult(fisher=fisher, qcrb=bound, config=config, path=path)


def qfi_from_state(state: GaussianState, config: PhaseConfiguration) -> QfiResult:
    """QFI of a pure Gaussian probe state by generator variance."""
    if not state.is_pure(_PURITY_REJECT_ATOL):
        raise StateValidityError(
            "generator-variance QFI requires a pure state "
            f"(symplectic eigenvalues {state.symplectic_eigenvalues()!r})"
        )
    m = photon_moments(state)
    if config is PhaseConfiguration.TWO_ARM:
        fisher = variance_of_sum(m)
    elif config is PhaseConfiguration.UPPER_ARM:
        fisher = 4.0 * m.var_a
    elif config is PhaseConfiguration.LOWER_ARM:
        fisher = 4.0 * m.var_b
    else:
        raise DomainError(f"unknown configuration {config!r}")
    return _result(fisher, config, ComputationPath.GENERATOR_VARIANCE)


def _check_strength(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise DomainError(f"{name} must be finite and non-negative, got {value!r}")
    if name in ("g", "r") and value > MAX_STRENGTH:
        raise DomainError(f"{name} = {value} exceeds overflow guard {MAX_STRENGTH}")
    return value


def closed_form_two_coherent(
    config: PhaseConfiguration,
    n_alpha: float,
    n_beta: float,
    theta_alpha: float = 0.0,
    theta_beta: float = 0.0,
    g: float = 0.0,
    theta_g: float = 0.0,
) -> float:
    """Closed-form QFI for coherent (x) coherent input.

    The two-arm value keeps its full phase dependence; the single-arm
    values are the phase-matched maxima (theta_alpha + theta_beta
    - theta_g = pi), so the phase arguments are ignored for those
    configurations and the caller must pass matched phases when comparing
    against the other computation paths.
    """
    n_alpha = _check_strength("n_alpha", n_alpha)
    n_beta = _check_strength("n_beta", n_beta)
    g = _check_strength("g", g)
    cosh4g = math.cosh(4.0 * g)
    sinh4g = math.sinh(4.0 * g)
    sinh2g_sq = math.sinh(2.0 * g) ** 2
    cross = math.sqrt(n_alpha * n_beta)
    if config is PhaseConfiguration.TWO_ARM:
        rel = theta_alpha + theta_beta - theta_g - math.pi
        return (n_alpha + n_beta) * cosh4g + sinh2g_sq + 2.0 * sinh4g * cross * math.cos(rel)
    base = (n_alpha + n_beta) * cosh4g + sinh2g_sq + 2.0 * cross * sinh4g + n_alpha + n_beta
    delta = 2.0 * (n_alpha - n_beta) * math.cosh(2.0 * g)
    if config is PhaseConfiguration.UPPER_ARM:
        return base + delta
    if config is PhaseConfiguration.LOWER_ARM:
        return base - delta
    raise DomainError(f"unknown configuration {config!r}")


def closed_form_coherent_squeezed(
    config: PhaseConfiguration,
    n_alpha: float,
    theta_alpha: float = 0.0,
    r: float = 0.0,
    theta_varsigma: float = 0.0,
    g: float = 0.0,
    theta_g: float = 0.0,
) -> float:
    """Closed-form QFI for coherent (x) squeezed-vacuum input.

    Same contract as the two-coherent form: full Phi dependence for
    two-arm, phase-matched maxima (Phi = pi) for the single arms.
    """
    n_alpha = _check_strength("n_alpha", n_alpha)
    r = _check_strength("r", r)
    g = _check_strength("g", g)
    cosh2g = math.cosh(2.0 * g)
    cosh2g_sq = cosh2g**2
    sinh2g_sq = math.sinh(2.0 * g) ** 2
    sinh2r_sq_half = 0.5 * math.sinh(2.0 * r) ** 2
    if config is PhaseConfiguration.TWO_ARM:
        phi = theta_varsigma + 2.0 * theta_alpha - 2.0 * theta_g
        squeezed_term = n_alpha * (math.cosh(2.0 * r) - math.sinh(2.0 * r) * math.cos(phi))
        return cosh2g_sq * (sinh2r_sq_half + n_alpha) + sinh2g_sq * (
            squeezed_term + math.cosh(r) ** 2
        )
    matched = cosh2g_sq * (sinh2r_sq_half + n_alpha) + sinh2g_sq * (
        n_alpha * math.exp(2.0 * r) + math.cosh(r) ** 2
    )
    quartic = 0.25 * (math.cosh(4.0 * r) - 1.0)
    if config is PhaseConfiguration.UPPER_ARM:
        return matched + n_alpha * (1.0 + 2.0 * cosh2g) - quartic * (2.0 * cosh2g - 1.0)
    if config is PhaseConfiguration.LOWER_ARM:
        return matched + n_alpha * (1.0 - 2.0 * cosh2g) + quartic * (2.0 * cosh2g + 1.0)
    raise DomainError(f"unknown configuration {config!r}")


def optimal_two_coherent_qfi(n_in: float, g: float) -> float:
    """Best two-arm QFI over two-coherent inputs of total photon number n_in.

    Attained at the balanced split n_alpha = n_beta = n_in/2 with matched
    phases: F = n_in e^{4g} + sinh^2(2g).
    """
    n_in = _check_strength("n_in", n_in)
    g = _check_strength("g", g)
    return n_in * math.exp(4.0 * g) + math.sinh(2.0 * g) ** 2


def optimal_coherent_squeezed_qfi(n_in: float, g: float) -> float:
    """Best two-arm QFI over coherent (x) squeezed inputs of total n_in.

    Attained with all photons in the squeezed mode (sinh^2 r = n_in, no
    coherent light): F = (1 + n_in)[2 n_in cosh^2(2g) + sinh^2(2g)].
    """
    n_in = _check_strength("n_in", n_in)
    g = _check_strength("g", g)
    return (1.0 + n_in) * (
        2.0 * n_in * math.cosh(2.0 * g) ** 2 + math.sinh(2.0 * g) ** 2
    )


def hofmann_limit(state: GaussianState) -> float:
    """Heisenberg-type bound 1/sqrt(<(n_a + n_b)^2>) for the probe state."""
    n_sq = expected_n_squared(photon_moments(state))
    if n_sq <= 0.0:
        raise DomainError("mean-square photon number is zero; bound undefined")
    return 1.0 / math.sqrt(n_sq)
