"""Tests for the Gaussian state representation and preparation transforms."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from su11_qfi import (
    ComplexAmplitude,
    CoherentSqueezed,
    DomainError,
    GaussianState,
    NbsParams,
    SqueezeParams,
    StateValidityError,
    TwoCoherent,
    apply_nbs,
    phase_rotate,
    photon_moments,
    prepare_input,
    vacuum,
)
from su11_qfi.gaussian_core import OMEGA, nbs_symplectic

gains = st.floats(min_value=0.0, max_value=1.5, allow_nan=False)
phases = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
amplitudes = st.floats(min_value=0.0, max_value=3.0, allow_nan=False)


class TestComplexAmplitude:
    def test_negative_modulus_rejected(self):
        with pytest.raises(DomainError):
            ComplexAmplitude(-0.1)

    def test_phase_wraps_into_principal_range(self):
        amp = ComplexAmplitude(1.0, -math.pi / 2)
        assert amp.phase == pytest.approx(3 * math.pi / 2)
        assert 0.0 <= amp.phase < 2 * math.pi

    def test_mean_photons_is_modulus_squared(self):
        assert ComplexAmplitude(2.0, 1.0).mean_photons == 4.0

    def test_round_trip_through_complex(self):
        amp = ComplexAmplitude.from_complex(1.0 + 2.0j)
        assert amp.value == pytest.approx(1.0 + 2.0j)


class TestParamGuards:
    @pytest.mark.parametrize("bad", [-0.5, 21.0, math.inf])
    def test_nbs_gain_guard(self, bad):
        with pytest.raises(DomainError):
            NbsParams(bad)

    @pytest.mark.parametrize("bad", [-0.5, 25.0])
    def test_squeeze_guard(self, bad):
        with pytest.raises(DomainError):
            SqueezeParams(bad)


class TestVacuum:
    def test_moments(self):
        state = vacuum()
        assert np.array_equal(state.mean, np.zeros(4))
        assert np.array_equal(state.cov, 0.5 * np.eye(4))

    def test_zero_photons(self):
        m = photon_moments(vacuum())
        assert m.mean_a == 0.0 and m.mean_b == 0.0

    def test_symplectic_eigenvalues(self):
        assert vacuum().symplectic_eigenvalues() == pytest.approx([0.5, 0.5])


class TestPrepareInput:
    def test_zero_amplitudes_give_vacuum(self):
        state = prepare_input(TwoCoherent(ComplexAmplitude(0.0), ComplexAmplitude(0.0)))
        assert np.array_equal(state.mean, vacuum().mean)
        assert np.array_equal(state.cov, vacuum().cov)

    def test_two_coherent_displacement_layout(self):
        state = prepare_input(
            TwoCoherent(ComplexAmplitude(1.0, 0.0), ComplexAmplitude(2.0, math.pi / 2))
        )
        assert state.mean == pytest.approx([math.sqrt(2), 0.0, 0.0, 2 * math.sqrt(2)])
        m = photon_moments(state)
        assert m.mean_a == pytest.approx(1.0)
        assert m.mean_b == pytest.approx(4.0)

    def test_squeezed_mode_photon_number(self):
        # Independent enumeration: sum n |c_n|^2 over the squeezed-vacuum
        # expansion at cutoff 40 gives 0.27154031740757345 for r = 0.5.
        state = prepare_input(
            CoherentSqueezed(ComplexAmplitude(0.0), SqueezeParams(0.5, 0.0))
        )
        m = photon_moments(state)
        assert m.mean_b == pytest.approx(0.27154031740757345, rel=1e-10)
        assert m.mean_b == pytest.approx(math.sinh(0.5) ** 2, rel=1e-14)
        assert m.mean_a == 0.0

    def test_squeezed_quadrature_orientation(self):
        # theta = 0 squeezes x: var(x) = e^{-2r}/2.
        state = prepare_input(
            CoherentSqueezed(ComplexAmplitude(0.0), SqueezeParams(1.0, 0.0))
        )
        assert state.cov[2, 2] == pytest.approx(0.5 * math.exp(-2.0), rel=1e-12)
        assert state.cov[3, 3] == pytest.approx(0.5 * math.exp(2.0), rel=1e-12)


class TestApplyNbs:
    def test_zero_gain_is_identity(self):
        state = prepare_input(TwoCoherent(ComplexAmplitude(1.0, 0.3), ComplexAmplitude(0.5)))
        out = apply_nbs(state, NbsParams(0.0, 1.2))
        assert out.mean == pytest.approx(state.mean, abs=1e-15)
        assert out.cov == pytest.approx(state.cov, abs=1e-15)

    def test_two_mode_squeezed_vacuum_photons(self):
        # Fock enumeration of the two-mode squeezed vacuum at g = 1 gives
        # per-mode mean sinh(1)^2 = 1.3810978455418155.
        out = apply_nbs(vacuum(), NbsParams(1.0, 0.0))
        m = photon_moments(out)
        assert m.mean_a == pytest.approx(1.3810978455418155, rel=1e-12)
        assert m.mean_b == pytest.approx(m.mean_a, rel=1e-12)

    def test_total_mean_photons_with_coherent_inputs(self):
        # Fock oracle at alpha = beta = 1, g = 0.5, all phases zero:
        # total mean photon number 1.278839517158128.
        state = prepare_input(TwoCoherent(ComplexAmplitude(1.0), ComplexAmplitude(1.0)))
        m = photon_moments(apply_nbs(state, NbsParams(0.5, 0.0)))
        assert m.mean_a + m.mean_b == pytest.approx(1.278839517158128, rel=1e-8)

    def test_symplectic_matrix_is_symplectic(self):
        s_mat = nbs_symplectic(NbsParams(0.9, 0.7))
        assert s_mat @ OMEGA @ s_mat.T == pytest.approx(OMEGA, abs=1e-14)


class TestPhaseRotate:
    def test_zero_angle_is_identity(self):
        state = apply_nbs(vacuum(), NbsParams(0.7, 0.1))
        out = phase_rotate(state, "a", 0.0)
        assert out.mean == pytest.approx(state.mean, abs=0)
        assert out.cov == pytest.approx(state.cov, abs=0)

    def test_quarter_turn_of_coherent_mean(self):
        state = prepare_input(TwoCoherent(ComplexAmplitude(1.0), ComplexAmplitude(0.0)))
        out = phase_rotate(state, "a", math.pi / 2)
        assert out.mean == pytest.approx([0.0, math.sqrt(2), 0.0, 0.0], abs=1e-15)

    def test_photon_number_invariance(self):
        state = apply_nbs(
            prepare_input(TwoCoherent(ComplexAmplitude(1.2, 0.4), ComplexAmplitude(0.8, 2.0))),
            NbsParams(0.6, 0.9),
        )
        before = photon_moments(state)
        after = photon_moments(phase_rotate(phase_rotate(state, "a", 0.83), "b", -1.9))
        assert after.mean_a == pytest.approx(before.mean_a, rel=1e-12)
        assert after.mean_b == pytest.approx(before.mean_b, rel=1e-12)

    def test_unknown_mode_rejected(self):
        with pytest.raises(DomainError):
            phase_rotate(vacuum(), "c", 0.1)


class TestStateValidation:
    def test_asymmetric_covariance_rejected(self):
        cov = 0.5 * np.eye(4)
        cov[0, 1] = 1e-6
        with pytest.raises(StateValidityError):
            GaussianState(np.zeros(4), cov)

    def test_uncertainty_violation_rejected(self):
        with pytest.raises(StateValidityError):
            GaussianState(np.zeros(4), 0.1 * np.eye(4))


class TestSymplecticProperties:
    """Composition/inverse/purity invariants of the preparation transforms."""

    @given(g1=gains, g2=gains, theta=phases)
    @settings(max_examples=60, deadline=None)
    def test_same_phase_squeezers_compose_additively(self, g1, g2, theta):
        state = prepare_input(TwoCoherent(ComplexAmplitude(0.7, 0.2), ComplexAmplitude(0.4, 1.0)))
        twice = apply_nbs(apply_nbs(state, NbsParams(g1, theta)), NbsParams(g2, theta))
        once = apply_nbs(state, NbsParams(g1 + g2, theta))
        assert twice.mean == pytest.approx(once.mean, abs=1e-10)
        assert twice.cov == pytest.approx(once.cov, abs=1e-10)

    @given(g=st.floats(min_value=0.0, max_value=2.0, allow_nan=False), theta=phases)
    @settings(max_examples=60, deadline=None)
    def test_opposite_phase_squeezer_inverts(self, g, theta):
        state = prepare_input(
            CoherentSqueezed(ComplexAmplitude(1.0, 0.5), SqueezeParams(0.8, 0.3))
        )
        back = apply_nbs(apply_nbs(state, NbsParams(g, theta)), NbsParams(g, theta + math.pi))
        assert back.mean == pytest.approx(state.mean, abs=1e-10)
        assert back.cov == pytest.approx(state.cov, abs=1e-10)

    @given(
        mod_a=amplitudes,
        ph_a=phases,
        r=st.floats(min_value=0.0, max_value=1.5, allow_nan=False),
        th_s=phases,
        g=gains,
        th_g=phases,
        phi=phases,
    )
    @settings(max_examples=60, deadline=None)
    def test_purity_preserved_along_pipelines(self, mod_a, ph_a, r, th_s, g, th_g, phi):
        state = prepare_input(
            CoherentSqueezed(ComplexAmplitude(mod_a, ph_a), SqueezeParams(r, th_s))
        )
        state = apply_nbs(state, NbsParams(g, th_g))
        state = phase_rotate(state, "b", phi)
        assert state.symplectic_eigenvalues() == pytest.approx([0.5, 0.5], abs=1e-9)
