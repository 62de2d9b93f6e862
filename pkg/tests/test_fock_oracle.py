"""Tests for the truncated Fock-space oracle."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from su11_qfi import (
    ComplexAmplitude,
    CoherentSqueezed,
    CutoffTooSmallError,
    InfeasibleParametersError,
    NbsParams,
    PhaseConfiguration,
    SqueezeParams,
    TwoCoherent,
    apply_nbs,
    apply_two_mode_squeezer,
    coherent_fock,
    oracle_qfi,
    phase_derivative_check,
    photon_moments,
    prepare_input,
    squeezed_vacuum_fock,
    tensor_photon_moments,
)
from su11_qfi.fock_oracle import (
    evolved_output,
    prepare_fock_input,
    two_mode_squeeze_generator,
)

VACUUM = TwoCoherent(ComplexAmplitude(0.0), ComplexAmplitude(0.0))


class TestCoherentExpansion:
    def test_vacuum_coefficients(self):
        coeff = coherent_fock(ComplexAmplitude(0.0), 8)
        assert coeff[0] == 1.0
        assert np.all(coeff[1:] == 0.0)

    def test_unit_amplitude_head(self):
        coeff = coherent_fock(ComplexAmplitude(1.0), 32)
        assert coeff[0] == pytest.approx(0.6065306597126334, rel=1e-14)
        assert coeff[1] == pytest.approx(coeff[0], rel=1e-14)

    def test_mean_photon_number(self):
        coeff = coherent_fock(ComplexAmplitude(2.0), 40)
        mean = float(np.arange(40) @ np.abs(coeff) ** 2)
        assert mean == pytest.approx(4.0, rel=1e-10)

    def test_norm_converges(self):
        norms = [
            float(np.vdot(c, c).real)
            for c in (coherent_fock(ComplexAmplitude(1.5), cut) for cut in (24, 48))
        ]
        assert abs(1.0 - norms[1]) < abs(1.0 - norms[0]) or norms[1] == pytest.approx(1.0)
        assert norms[1] == pytest.approx(1.0, abs=1e-12)

    def test_cutoff_too_small(self):
        with pytest.raises(CutoffTooSmallError):
            coherent_fock(ComplexAmplitude(3.0), 8)


class TestSqueezedExpansion:
    def test_no_squeezing_is_vacuum(self):
        coeff = squeezed_vacuum_fock(SqueezeParams(0.0), 8)
        assert coeff[0] == 1.0
        assert np.all(coeff[1:] == 0.0)

    def test_odd_coefficients_vanish(self):
        coeff = squeezed_vacuum_fock(SqueezeParams(0.8, 1.1), 64)
        assert np.all(coeff[1::2] == 0.0)

    def test_head_coefficients_match_factorial_formula(self):
        # c_{2m} = (cosh r)^{-1/2} (-e^{i t} tanh r)^m sqrt((2m)!)/(2^m m!)
        coeff = squeezed_vacuum_fock(SqueezeParams(0.5, 0.0), 48)
        c0 = math.cosh(0.5) ** -0.5
        assert abs(coeff[0]) == pytest.approx(0.9417106158316757, rel=1e-14)
        for m in (1, 2, 3):
            expected = (
                c0
                * math.tanh(0.5) ** m
                * math.sqrt(math.factorial(2 * m))
                / (2**m * math.factorial(m))
            )
            assert abs(coeff[2 * m]) == pytest.approx(expected, rel=1e-12)
        assert abs(coeff[2]) == pytest.approx(0.30771917645837044, rel=1e-14)
        assert coeff[2].real < 0.0  # the (-tanh r)^m sign at theta = 0

    def test_mean_photon_number(self):
        coeff = squeezed_vacuum_fock(SqueezeParams(1.0), 110)
        mean = float(np.arange(110) @ np.abs(coeff) ** 2)
        assert mean == pytest.approx(math.sinh(1.0) ** 2, rel=1e-9)

    def test_cutoff_too_small(self):
        with pytest.raises(CutoffTooSmallError):
            squeezed_vacuum_fock(SqueezeParams(1.0), 40)


class TestTwoModeSqueezer:
    def test_zero_gain_is_identity(self):
        state = prepare_fock_input(
            TwoCoherent(ComplexAmplitude(1.0, 0.4), ComplexAmplitude(0.5)), 32, 32
        )
        out = apply_two_mode_squeezer(state, NbsParams(0.0, 0.7))
        assert np.array_equal(out.amplitudes, state.amplitudes)

    def test_norm_conservation(self):
        state = prepare_fock_input(
            TwoCoherent(ComplexAmplitude(1.0), ComplexAmplitude(1.0)), 64, 64
        )
        out = apply_two_mode_squeezer(state, NbsParams(0.6, 0.2))
        assert out.norm() == pytest.approx(1.0, abs=1e-12)

    def test_two_mode_squeezed_vacuum_mean_photons(self):
        out = evolved_output(VACUUM, NbsParams(0.8))
        m = tensor_photon_moments(out)
        assert m.mean_a == pytest.approx(0.7887322355974427, rel=1e-8)  # sinh(0.8)^2
        assert m.mean_b == pytest.approx(m.mean_a, rel=1e-12)

    def test_schmidt_coefficients(self):
        # U|00> has amplitudes (-e^{i theta} tanh g)^n / cosh g on the diagonal.
        out = evolved_output(VACUUM, NbsParams(0.8, 0.3))
        diag = np.diag(out.amplitudes)[:16]
        expected = (-np.exp(0.3j) * math.tanh(0.8)) ** np.arange(16) / math.cosh(0.8)
        assert diag == pytest.approx(expected, abs=1e-8)
        off_diag = out.amplitudes - np.diag(np.diag(out.amplitudes))
        assert np.max(np.abs(off_diag)) < 1e-12

    def test_output_tail_violation_raises(self):
        state = prepare_fock_input(VACUUM, 16, 16)
        with pytest.raises(CutoffTooSmallError):
            apply_two_mode_squeezer(state, NbsParams(1.0))


class TestUnitaryConvention:
    def test_heisenberg_transform_of_mode_a(self):
        """Conjugating a by the truncated U reproduces
        cosh(g) a - e^{i theta} sinh(g) b^dag on low-occupation states."""
        dim, g, theta = 36, 0.6, 0.9
        gen = two_mode_squeeze_generator(NbsParams(g, theta), dim, dim).toarray()
        unitary = expm(gen)
        ladder = np.diag(np.sqrt(np.arange(1, dim)), k=1)
        a_op = np.kron(ladder, np.eye(dim))
        b_dag = np.kron(np.eye(dim), ladder.conj().T)
        conjugated = unitary.conj().T @ a_op @ unitary
        expected = math.cosh(g) * a_op - np.exp(1j * theta) * math.sinh(g) * b_dag
        keep = np.array(
            [na * dim + nb for na in range(dim) for nb in range(dim) if na + nb <= 6]
        )
        block = np.ix_(keep, keep)
        assert np.max(np.abs(conjugated[block] - expected[block])) < 1e-8


class TestOracleQfi:
    def test_two_mode_squeezed_vacuum(self):
        value = oracle_qfi(VACUUM, NbsParams(0.8), PhaseConfiguration.TWO_ARM)
        assert value == pytest.approx(5.643323100271931, rel=1e-7)  # sinh(1.6)^2

    def test_interfering_coherent_inputs(self):
        spec = TwoCoherent(ComplexAmplitude(1.0), ComplexAmplitude(1.0))
        value = oracle_qfi(spec, NbsParams(0.5), PhaseConfiguration.TWO_ARM)
        assert value == pytest.approx(1.6517684120150395, rel=1e-7)

    def test_single_arm_configs(self):
        spec = TwoCoherent(ComplexAmplitude(2.0, math.pi), ComplexAmplitude(0.0))
        upper = oracle_qfi(spec, NbsParams(1.0), PhaseConfiguration.UPPER_ARM)
        lower = oracle_qfi(spec, NbsParams(1.0), PhaseConfiguration.LOWER_ARM)
        assert upper == pytest.approx(156.48461329074325, rel=1e-7)
        assert lower == pytest.approx(96.28948223340514, rel=1e-7)

    def test_unsqueezed_input_reduces_to_coherent_case(self):
        squeezed = CoherentSqueezed(ComplexAmplitude(2.0), SqueezeParams(0.0))
        coherent = TwoCoherent(ComplexAmplitude(2.0), ComplexAmplitude(0.0))
        params = NbsParams(0.5)
        for config in PhaseConfiguration:
            assert oracle_qfi(squeezed, params, config) == pytest.approx(
                oracle_qfi(coherent, params, config), rel=1e-10
            )

    def test_cutoff_stability_at_accepted_cutoffs(self):
        spec = TwoCoherent(ComplexAmplitude(1.0, math.pi), ComplexAmplitude(1.0))
        params = NbsParams(0.8)
        accepted = evolved_output(spec, params)
        doubled = prepare_fock_input(spec, 2 * accepted.cutoff_a, 2 * accepted.cutoff_b)
        redone = apply_two_mode_squeezer(doubled, params)
        for config in PhaseConfiguration:
            small = oracle_qfi(spec, params, config)
            m = tensor_photon_moments(redone)
            big = {
                PhaseConfiguration.UPPER_ARM: 4.0 * m.var_a,
                PhaseConfiguration.LOWER_ARM: 4.0 * m.var_b,
                PhaseConfiguration.TWO_ARM: m.var_a + m.var_b + 2.0 * m.cov_ab,
            }[config]
            assert small == pytest.approx(big, rel=1e-8)

    def test_moments_match_gaussian_route(self):
        spec = CoherentSqueezed(ComplexAmplitude(1.0, 0.6), SqueezeParams(0.5, 2.0))
        params = NbsParams(0.7, 1.3)
        from_tensor = tensor_photon_moments(evolved_output(spec, params))
        from_gaussian = photon_moments(apply_nbs(prepare_input(spec), params))
        for field in ("mean_a", "mean_b", "var_a", "var_b", "cov_ab"):
            assert getattr(from_tensor, field) == pytest.approx(
                getattr(from_gaussian, field), rel=1e-7, abs=1e-9
            )

    def test_moments_match_gaussian_route_across_grid(self):
        """All five moment fields agree to 1e-7 relative on the check grid,
        up to the oracle's working range g = 1.2."""
        from su11_qfi.verification import GRID_SMALL, grid_points

        cases = [(spec, params) for spec, params, _ in grid_points(GRID_SMALL)]
        cases.append(
            (CoherentSqueezed(ComplexAmplitude(1.0), SqueezeParams(0.5, math.pi)),
             NbsParams(1.2, 0.4))
        )
        for spec, params in cases:
            from_tensor = tensor_photon_moments(evolved_output(spec, params))
            from_gaussian = photon_moments(apply_nbs(prepare_input(spec), params))
            for field in ("mean_a", "mean_b", "var_a", "var_b", "cov_ab"):
                assert getattr(from_tensor, field) == pytest.approx(
                    getattr(from_gaussian, field), rel=1e-7, abs=1e-9
                ), f"{field} mismatch at {spec}, {params}"

    def test_infeasible_cutoff_cap(self):
        with pytest.raises(InfeasibleParametersError):
            oracle_qfi(VACUUM, NbsParams(1.0), PhaseConfiguration.TWO_ARM, max_cutoff=16)

    def test_large_inputs_rejected_early(self):
        big = TwoCoherent(ComplexAmplitude(math.sqrt(200.0)), ComplexAmplitude(0.0))
        with pytest.raises(InfeasibleParametersError):
            oracle_qfi(big, NbsParams(1.5), PhaseConfiguration.TWO_ARM)


class TestPhaseDerivativeCheck:
    def test_matches_generator_variance_route(self):
        value = phase_derivative_check(VACUUM, NbsParams(0.8), 0.3, 0.1)
        reference = oracle_qfi(VACUUM, NbsParams(0.8), PhaseConfiguration.TWO_ARM)
        assert value == pytest.approx(reference, rel=1e-4)

    def test_zero_gain_two_coherent(self):
        spec = TwoCoherent(ComplexAmplitude(1.0), ComplexAmplitude(1.0))
        value = phase_derivative_check(spec, NbsParams(0.0), 0.2, 0.5)
        assert value == pytest.approx(2.0, abs=1e-4)

    def test_independent_of_phase_split(self):
        spec = TwoCoherent(ComplexAmplitude(1.0, math.pi), ComplexAmplitude(1.0))
        params = NbsParams(0.5)
        one = phase_derivative_check(spec, params, 0.4, 0.0)
        other = phase_derivative_check(spec, params, 0.1, 0.3)
        assert one == pytest.approx(other, rel=1e-6)
