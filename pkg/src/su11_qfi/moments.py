"""Photon-number moments of a two-mode Gaussian state.

Second moments of the number operators follow from the quadrature moments
by Gaussian (Wick/Isserlis) factorization of the fourth-order terms, in
closed form.  Operator ordering is handled by working with the complex
fluctuation moments

    n_ij = <da_i^dag da_j>      (normal),
    m_ij = <da_i   da_j>        (anomalous),

built from <dR_k dR_l> = V_kl + (i/2) Omega_kl, and the displacement
amplitudes alpha_i = (<x_i> + i <p_i>)/sqrt(2).  The anchor cases are
vacuum -> all moments zero and a coherent state -> Poisson statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StateValidityError
from .gaussian_core import OMEGA, GaussianState, symplectic_eigenvalues

_VAR_FLOOR_TOL = 1e-9
_MEAN_SLACK = 1e-12
_CS_SLACK = 1e-9


@dataclass(frozen=True)
class PhotonMoments:
    """Means, variances and cross-covariance of (n_a, n_b), in photons."""

    mean_a: float
    mean_b: float
    var_a: float
    var_b: float
    cov_ab: float

    def __post_init__(self) -> None:
        for name in ("mean_a", "mean_b"):
            if getattr(self, name) < -_MEAN_SLACK:
                raise StateValidityError(f"{name} = {getattr(self, name)!r} is negative")
        for name in ("var_a", "var_b"):
            if getattr(self, name) < 0.0:
                raise StateValidityError(f"{name} = {getattr(self, name)!r} is negative")
        bound = math.sqrt(self.var_a * self.var_b)
        if abs(self.cov_ab) > bound * (1.0 + 1e-12) + _CS_SLACK:
            raise StateValidityError(
                f"|cov_ab| = {abs(self.cov_ab)!r} violates Cauchy-Schwarz bound {bound!r}"
            )


def _complex_second_moments(state: GaussianState):
    """Displacements plus the normal/anomalous fluctuation moments."""
    mean, cov = state.mean, state.cov
    amps = (
        complex(mean[0], mean[1]) / math.sqrt(2.0),
        complex(mean[2], mean[3]) / math.sqrt(2.0),
    )
    c = cov + 0.5j * OMEGA
    n = {}
    m = {}
    for i in (0, 1):
        xi, pi = 2 * i, 2 * i + 1
        for j in (0, 1):
            xj, pj = 2 * j, 2 * j + 1
            n[i, j] = 0.5 * (c[xi, xj] + c[pi, pj] + 1j * (c[xi, pj] - c[pi, xj]))
            m[i, j] = 0.5 * (c[xi, xj] - c[pi, pj] + 1j * (c[xi, pj] + c[pi, xj]))
    return amps, n, m


def _floor_variance(value: float) -> float:
    if value < 0.0:
        if value < -_VAR_FLOOR_TOL:
            raise StateValidityError(f"photon-number variance {value!r} is negative")
        return 0.0
    return value


def photon_moments(state: GaussianState) -> PhotonMoments:
    """Exact number moments of a Gaussian state.

    For each mode, mean = (V_xx + V_pp - 1)/2 + (xbar^2 + pbar^2)/2; the
    variances and the cross-covariance come from the Gaussian moment
    factorization of the centered quadratures plus mean-shift terms.

    Raises:
        StateValidityError: if the covariance violates the uncertainty
            bound (which signals an upstream bug, since every constructor
            in this package validates it).
    """
    if symplectic_eigenvalues(state.cov)[0] < 0.5 - 1e-9 * max(
        1.0, float(np.linalg.norm(state.cov, 2))
    ):
        raise StateValidityError("covariance violates the uncertainty bound")
    amps, n, m = _complex_second_moments(state)

    def mode_mean(i: int) -> float:
        return float(n[i, i].real + abs(amps[i]) ** 2)

    def mode_var(i: int) -> float:
        al = amps[i]
        nii = n[i, i].real
        mii = m[i, i]
        value = (
            2.0 * (np.conj(al) ** 2 * mii).real
            + 2.0 * abs(al) ** 2 * nii
            + abs(mii) ** 2
            + nii**2
            + abs(al) ** 2
            + nii
        )
        return _floor_variance(float(value))

    al, be = amps
    nab = n[0, 1]
    mab = m[0, 1]
    cov_ab = float(
        2.0 * (np.conj(al) * np.conj(be) * mab).real
        + 2.0 * (al * np.conj(be) * nab).real
        + abs(mab) ** 2
        + abs(nab) ** 2
    )
    return PhotonMoments(
        mean_a=mode_mean(0),
        mean_b=mode_mean(1),
        var_a=mode_var(0),
        var_b=mode_var(1),
        cov_ab=cov_ab,
    )


def variance_of_sum(m: PhotonMoments) -> float:
    """Variance of the total photon number n_a + n_b."""
    return m.var_a + m.var_b + 2.0 * m.cov_ab


def expected_n_squared(m: PhotonMoments) -> float:
    """Second moment <(n_a + n_b)^2> = Var(n_a + n_b) + <n_a + n_b>^2."""
    total = m.mean_a + m.mean_b
    return variance_of_sum(m) + total**2
