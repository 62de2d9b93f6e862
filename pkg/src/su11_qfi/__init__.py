"""Quantum Fisher information of an SU(1,1) interferometer.

Phase-estimation bounds for an interferometer whose beam splitters are
parametric amplifiers, with the phase delay in the upper arm, the lower
arm, or distributed over both, and with coherent (x) coherent or coherent
(x) squeezed-vacuum inputs.  Every quantity is available through three
mutually independent routes: closed forms, generator variance on the
Gaussian state, and a truncated Fock-space oracle.
"""

__version__ = "0.1.0"

from .errors import (
    CutoffTooSmallError,
    DomainError,
    InfeasibleParametersError,
    StateValidityError,
)
from .gaussian_core import (
    ComplexAmplitude,
    CoherentSqueezed,
    GaussianState,
    InputSpec,
    NbsParams,
    SqueezeParams,
    TwoCoherent,
    apply_nbs,
    phase_rotate,
    prepare_input,
    vacuum,
)
from .moments import PhotonMoments, expected_n_squared, photon_moments, variance_of_sum
from .qfi import (
    ComputationPath,
    PhaseConfiguration,
    QfiResult,
    closed_form_coherent_squeezed,
    closed_form_two_coherent,
    hofmann_limit,
    optimal_coherent_squeezed_qfi,
    optimal_two_coherent_qfi,
    qcrb,
    qfi_from_state,
)
from .fock_oracle import (
    FockTensor,
    apply_two_mode_squeezer,
    coherent_fock,
    oracle_qfi,
    phase_derivative_check,
    squeezed_vacuum_fock,
    tensor_photon_moments,
)

__all__ = [
    "ComplexAmplitude",
    "CoherentSqueezed",
    "ComputationPath",
    "CutoffTooSmallError",
    "DomainError",
    "FockTensor",
    "GaussianState",
    "InfeasibleParametersError",
    "InputSpec",
    "NbsParams",
    "PhaseConfiguration",
    "PhotonMoments",
    "QfiResult",
    "SqueezeParams",
    "StateValidityError",
    "TwoCoherent",
    "apply_nbs",
    "apply_two_mode_squeezer",
    "closed_form_coherent_squeezed",
    "closed_form_two_coherent",
    "coherent_fock",
    "expected_n_squared",
    "hofmann_limit",
    "optimal_coherent_squeezed_qfi",
    "optimal_two_coherent_qfi",
    "oracle_qfi",
    "phase_derivative_check",
    "phase_rotate",
    "photon_moments",
    "prepare_input",
    "qcrb",
    "qfi_from_state",
    "squeezed_vacuum_fock",
    "tensor_photon_moments",
    "vacuum",
    "variance_of_sum",
]
