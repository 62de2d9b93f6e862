"""Cross-validation of the three computation routes on parameter grids.

The closed forms, the Gaussian generator-variance route and the Fock-space
oracle are mutually independent; this module evaluates all of them on
small grids and checks the documented agreement tolerances, the algebraic
identities between configurations, and the physical invariants (phase
maximum, Hofmann dominance, purity).  The command-line ``verify``
subcommand is a thin formatter over :func:`run_suite`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import fock_oracle, qfi
from .gaussian_core import (
    CoherentSqueezed,
    ComplexAmplitude,
    GaussianState,
    InputSpec,
    NbsParams,
    SqueezeParams,
    TwoCoherent,
    apply_nbs,
    prepare_input,
)
from .moments import expected_n_squared, photon_moments
from .qfi import ComputationPath, PhaseConfiguration, QfiResult

CLOSED_VS_GAUSSIAN_RTOL = 1e-10
ORACLE_RTOL = 1e-6
IDENTITY_RTOL = 1e-12
PURITY_ATOL = 1e-9
DERIVATIVE_RTOL = 1e-4
DERIVATIVE_SPLIT_ATOL = 1e-6

ALL_CONFIGS = (
    PhaseConfiguration.UPPER_ARM,
    PhaseConfiguration.LOWER_ARM,
    PhaseConfiguration.TWO_ARM,
)


@dataclass(frozen=True)
class GridSpec:
    """Parameter grid for the agreement checks (phase-matched points)."""

    gains: tuple[float, ...]
    photon_numbers: tuple[float, ...]
    squeeze_strengths: tuple[float, ...]


GRID_SMALL = GridSpec(gains=(0.2, 0.5, 0.8), photon_numbers=(0.0, 1.0), squeeze_strengths=(0.0, 0.5))
GRID_FULL = GridSpec(
    gains=(0.2, 0.5, 1.0),
    photon_numbers=(0.0, 1.0, 4.0),
    squeeze_strengths=(0.0, 0.5, 1.0),
)

GRIDS = {"small": GRID_SMALL, "full": GRID_FULL}


@dataclass(frozen=True)
class CheckResult:
    name: str
    point: str
    passed: bool
    measured: float
    tolerance: float

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"[{status}] {self.name}: {self.point} "
            f"(measured {self.measured:.3e}, tolerance {self.tolerance:.0e})"
        )


def matched_two_coherent(n_alpha: float, n_beta: float) -> TwoCoherent:
    """Two-coherent input at the phase-matched point (theta sum = pi, theta_g = 0)."""
    return TwoCoherent(
        alpha=ComplexAmplitude(math.sqrt(n_alpha), math.pi),
        beta=ComplexAmplitude(math.sqrt(n_beta), 0.0),
    )


def matched_coherent_squeezed(n_alpha: float, r: float) -> CoherentSqueezed:
    """Coherent (x) squeezed input at the phase-matched point (Phi = pi)."""
    return CoherentSqueezed(
        alpha=ComplexAmplitude(math.sqrt(n_alpha), 0.0),
        squeeze=SqueezeParams(r, math.pi),
    )


def closed_form_qfi(spec: InputSpec, params: NbsParams, config: PhaseConfiguration) -> float:
    """Dispatch the closed form matching the input family."""
    if isinstance(spec, TwoCoherent):
        return qfi.closed_form_two_coherent(
            config,
            spec.alpha.mean_photons,
            spec.beta.mean_photons,
            spec.alpha.phase,
            spec.beta.phase,
            params.gain,
            params.pump_phase,
        )
    if isinstance(spec, CoherentSqueezed):
        return qfi.closed_form_coherent_squeezed(
            config,
            spec.alpha.mean_photons,
            spec.alpha.phase,
            spec.squeeze.r,
            spec.squeeze.theta,
            params.gain,
            params.pump_phase,
        )
    raise TypeError(f"unsupported input spec: {type(spec).__name__}")


def probe_state(spec: InputSpec, params: NbsParams) -> GaussianState:
    """The post-amplifier Gaussian state the QFI is evaluated on."""
    return apply_nbs(prepare_input(spec), params)


def compute_point(
    spec: InputSpec,
    params: NbsParams,
    config: PhaseConfiguration,
    path: ComputationPath,
    max_cutoff: int = fock_oracle.MAX_CUTOFF,
) -> QfiResult:
    """Evaluate one (input, amplifier, configuration) point on one route."""
    if path is ComputationPath.CLOSED_FORM:
        fisher = closed_form_qfi(spec, params, config)
        fisher = max(0.0, fisher)
        return QfiResult(
            fisher=fisher,
            qcrb=qfi.qcrb(fisher) if fisher > 0.0 else None,
            config=config,
            path=path,
        )
    if path is ComputationPath.GENERATOR_VARIANCE:
        return qfi.qfi_from_state(probe_state(spec, params), config)
    if path is ComputationPath.FOCK_ORACLE:
        fisher = fock_oracle.oracle_qfi(spec, params, config, max_cutoff)
        fisher = max(0.0, fisher)
        return QfiResult(
            fisher=fisher,
            qcrb=qfi.qcrb(fisher) if fisher > 0.0 else None,
            config=config,
            path=path,
        )
    raise ValueError(f"unknown computation path {path!r}")


def grid_points(grid: GridSpec) -> Iterator[tuple[InputSpec, NbsParams, str]]:
    """Phase-matched (input, amplifier) points of the agreement grid."""
    for g in grid.gains:
        params = NbsParams(g, 0.0)
        for n_alpha in grid.photon_numbers:
            for n_beta in grid.photon_numbers:
                label = f"two-coherent g={g:g} Na={n_alpha:g} Nb={n_beta:g}"
                yield matched_two_coherent(n_alpha, n_beta), params, label
            for r in grid.squeeze_strengths:
                label = f"coherent-squeezed g={g:g} Na={n_alpha:g} r={r:g}"
                yield matched_coherent_squeezed(n_alpha, r), params, label


def _rel_diff(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-30)


def three_path_checks(
    grid: GridSpec, max_cutoff: int = fock_oracle.MAX_CUTOFF
) -> list[CheckResult]:
    """Closed form vs generator variance vs Fock oracle on the grid."""
    results = []
    for spec, params, label in grid_points(grid):
        state = probe_state(spec, params)
        for config in ALL_CONFIGS:
            closed = closed_form_qfi(spec, params, config)
            gauss = qfi.qfi_from_state(state, config).fisher
            oracle = fock_oracle.oracle_qfi(spec, params, config, max_cutoff)
            point = f"{label} {config.value}"
            results.append(
                CheckResult(
                    "closed-vs-gaussian", point, _rel_diff(closed, gauss) <= CLOSED_VS_GAUSSIAN_RTOL,
                    _rel_diff(closed, gauss), CLOSED_VS_GAUSSIAN_RTOL,
                )
            )
            for other_name, other in (("closed", closed), ("gaussian", gauss)):
                results.append(
                    CheckResult(
                        f"oracle-vs-{other_name}", point, _rel_diff(oracle, other) <= ORACLE_RTOL,
                        _rel_diff(oracle, other), ORACLE_RTOL,
                    )
                )
    return results


def phase_lock_checks(
    samples: int = 16,
    g: float = 0.5,
    n_alpha: float = 1.0,
    n_beta: float = 1.0,
    max_cutoff: int = fock_oracle.MAX_CUTOFF,
) -> list[CheckResult]:
    """The oracle must trace the cos(theta_sum - pi) interference term."""
    results = []
    params = NbsParams(g, 0.0)
    values = []
    thetas = [2.0 * math.pi * k / samples for k in range(samples)]
    for theta in thetas:
        spec = TwoCoherent(
            alpha=ComplexAmplitude(math.sqrt(n_alpha), theta),
            beta=ComplexAmplitude(math.sqrt(n_beta), 0.0),
        )
        closed = qfi.closed_form_two_coherent(
            PhaseConfiguration.TWO_ARM, n_alpha, n_beta, theta, 0.0, g, 0.0
        )
        oracle = fock_oracle.oracle_qfi(spec, params, PhaseConfiguration.TWO_ARM, max_cutoff)
        values.append(oracle)
        results.append(
            CheckResult(
                "phase-lock", f"theta_sum={theta:.4f}", _rel_diff(closed, oracle) <= ORACLE_RTOL,
                _rel_diff(closed, oracle), ORACLE_RTOL,
            )
        )
    peak = thetas[int(np.argmax(values))]
    step = 2.0 * math.pi / samples
    results.append(
        CheckResult(
            "phase-maximum", f"argmax at {peak:.4f} vs pi", abs(peak - math.pi) <= step / 2.0,
            abs(peak - math.pi), step / 2.0,
        )
    )
    return results


def reduction_checks() -> list[CheckResult]:
    """Limiting-case identities of the closed forms, at 1e-12 relative."""
    results = []
    for g in (0.3, 0.9, 1.5):
        for n_alpha in (0.0, 2.5):
            for config in ALL_CONFIGS:
                collapsed = qfi.closed_form_coherent_squeezed(
                    config, n_alpha, 0.7, 0.0, math.pi, g, 0.35
                )
                # With r = 0 the interference term carries a factor sinh(2r) = 0,
                # so the phases are immaterial on both sides.
                reference = qfi.closed_form_two_coherent(config, n_alpha, 0.0, 0.7, 0.0, g, 0.35)
                results.append(
                    CheckResult(
                        "reduction-r0", f"g={g:g} Na={n_alpha:g} {config.value}",
                        _rel_diff(collapsed, reference) <= IDENTITY_RTOL,
                        _rel_diff(collapsed, reference), IDENTITY_RTOL,
                    )
                )
        vac = math.sinh(2.0 * g) ** 2
        for config in ALL_CONFIGS:
            value = qfi.closed_form_two_coherent(config, 0.0, 0.0, math.pi, 0.0, g, 0.0)
            results.append(
                CheckResult(
                    "reduction-vacuum", f"g={g:g} {config.value}",
                    _rel_diff(value, vac) <= IDENTITY_RTOL, _rel_diff(value, vac), IDENTITY_RTOL,
                )
            )
    for n_alpha, n_beta, th_a, th_b in ((1.0, 2.0, 0.3, 1.1), (4.0, 0.5, 2.0, 0.0)):
        value = qfi.closed_form_two_coherent(
            PhaseConfiguration.TWO_ARM, n_alpha, n_beta, th_a, th_b, 0.0, 0.2
        )
        results.append(
            CheckResult(
                "reduction-g0", f"Na={n_alpha:g} Nb={n_beta:g}",
                _rel_diff(value, n_alpha + n_beta) <= IDENTITY_RTOL,
                _rel_diff(value, n_alpha + n_beta), IDENTITY_RTOL,
            )
        )
    return results


def arm_difference_checks(draws: int = 50, seed: int = 20240917) -> list[CheckResult]:
    """Single-arm minus two-arm identities on random parameter draws."""
    rng = np.random.default_rng(seed)
    results = []
    for k in range(draws):
        g = float(rng.uniform(0.0, 2.0))
        n_alpha = float(rng.uniform(0.0, 50.0))
        n_beta = float(rng.uniform(0.0, 50.0))
        r = float(rng.uniform(0.0, 2.0))
        cosh2g = math.cosh(2.0 * g)

        two = qfi.closed_form_two_coherent(
            PhaseConfiguration.TWO_ARM, n_alpha, n_beta, math.pi, 0.0, g, 0.0
        )
        upper = qfi.closed_form_two_coherent(PhaseConfiguration.UPPER_ARM, n_alpha, n_beta, g=g)
        lower = qfi.closed_form_two_coherent(PhaseConfiguration.LOWER_ARM, n_alpha, n_beta, g=g)
        scale = max(abs(two), abs(upper), abs(lower), 1.0)
        for name, single, sign in (("upper", upper, 1.0), ("lower", lower, -1.0)):
            expect = (n_alpha + n_beta) + sign * 2.0 * (n_alpha - n_beta) * cosh2g
            err = abs((single - two) - expect) / scale
            results.append(
                CheckResult(
                    f"arm-diff-coh-{name}", f"draw {k}: g={g:.3f} Na={n_alpha:.2f} Nb={n_beta:.2f}",
                    err <= IDENTITY_RTOL, err, IDENTITY_RTOL,
                )
            )

        two = qfi.closed_form_coherent_squeezed(
            PhaseConfiguration.TWO_ARM, n_alpha, 0.0, r, math.pi, g, 0.0
        )
        upper = qfi.closed_form_coherent_squeezed(PhaseConfiguration.UPPER_ARM, n_alpha, r=r, g=g)
        lower = qfi.closed_form_coherent_squeezed(PhaseConfiguration.LOWER_ARM, n_alpha, r=r, g=g)
        scale = max(abs(two), abs(upper), abs(lower), 1.0)
        quartic = 0.25 * (math.cosh(4.0 * r) - 1.0)
        for name, single, expect in (
            ("upper", upper, n_alpha * (1.0 + 2.0 * cosh2g) - quartic * (2.0 * cosh2g - 1.0)),
            ("lower", lower, n_alpha * (1.0 - 2.0 * cosh2g) + quartic * (2.0 * cosh2g + 1.0)),
        ):
            err = abs((single - two) - expect) / scale
            results.append(
                CheckResult(
                    f"arm-diff-squ-{name}", f"draw {k}: g={g:.3f} Na={n_alpha:.2f} r={r:.3f}",
                    err <= IDENTITY_RTOL, err, IDENTITY_RTOL,
                )
            )
    return results


def hofmann_checks(states: Iterable[tuple[str, GaussianState]]) -> list[CheckResult]:
    """F(two-arm) = Var(N) must not exceed <N^2> on any probe state."""
    results = []
    for label, state in states:
        m = photon_moments(state)
        fisher = qfi.qfi_from_state(state, PhaseConfiguration.TWO_ARM).fisher
        n_sq = expected_n_squared(m)
        margin = fisher - n_sq
        tol = 1e-12 * max(1.0, n_sq)
        results.append(CheckResult("hofmann-dominance", label, margin <= tol, margin, tol))
    return results


def purity_checks(states: Iterable[tuple[str, GaussianState]]) -> list[CheckResult]:
    """Symplectic eigenvalues of every produced state must equal 1/2."""
    results = []
    for label, state in states:
        dev = float(np.max(np.abs(state.symplectic_eigenvalues() - 0.5)))
        results.append(CheckResult("purity", label, dev <= PURITY_ATOL, dev, PURITY_ATOL))
    return results


def derivative_checks(
    points: Sequence[tuple[InputSpec, NbsParams]] | None = None,
    max_cutoff: int = fock_oracle.MAX_CUTOFF,
) -> list[CheckResult]:
    """Finite-difference QFI vs the generator picture, plus split invariance."""
    if points is None:
        points = [
            (matched_two_coherent(0.0, 0.0), NbsParams(0.8, 0.0)),
            (matched_two_coherent(1.0, 1.0), NbsParams(0.5, 0.0)),
            (matched_coherent_squeezed(1.0, 0.5), NbsParams(0.5, 0.0)),
        ]
    results = []
    for spec, params in points:
        label = f"{type(spec).__name__} g={params.gain:g}"
        reference = fock_oracle.oracle_qfi(
            spec, params, PhaseConfiguration.TWO_ARM, max_cutoff
        )
        fd = fock_oracle.phase_derivative_check(spec, params, 0.3, 0.1, max_cutoff=max_cutoff)
        err = _rel_diff(fd, reference)
        results.append(
            CheckResult("derivative-vs-oracle", label, err <= DERIVATIVE_RTOL, err, DERIVATIVE_RTOL)
        )
        other_split = fock_oracle.phase_derivative_check(
            spec, params, 0.4 - 0.25, 0.25, max_cutoff=max_cutoff
        )
        split_dev = abs(fd - other_split) / max(abs(fd), 1.0)
        results.append(
            CheckResult(
                "derivative-split-invariance", label, split_dev <= DERIVATIVE_SPLIT_ATOL,
                split_dev, DERIVATIVE_SPLIT_ATOL,
            )
        )
    return results


def run_suite(grid_name: str = "small", max_cutoff: int = fock_oracle.MAX_CUTOFF) -> list[CheckResult]:
    """Run every check family; the CLI ``verify`` subcommand formats this."""
    try:
        grid = GRIDS[grid_name]
    except KeyError:
        raise ValueError(f"unknown grid {grid_name!r}; choose from {sorted(GRIDS)}") from None
    states = [(label, probe_state(spec, params)) for spec, params, label in grid_points(grid)]
    results = []
    results.extend(three_path_checks(grid, max_cutoff))
    results.extend(phase_lock_checks(max_cutoff=max_cutoff))
    results.extend(reduction_checks())
    results.extend(arm_difference_checks())
    results.extend(hofmann_checks(states))
    results.extend(purity_checks(states))
    results.extend(derivative_checks(max_cutoff=max_cutoff))
    return results
