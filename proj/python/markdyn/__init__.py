"""Finite-dimensional mark transmission laboratory.

Dense operator algebra with Lüders marking, mark-manifestation profiles
along Hamiltonian dynamics, Gaussian-smearing analytic elements and a
brickwork qubit-chain locality model. The heavy lifting lives in the
C++ extension module; this package re-exports its surface.
"""

from markdyn._core import (
    DimensionError,
    DynamicalSystem,
    IndistinguishabilityReport,
    LatticeSystem,
    FalsifierReport,
    ManifestationWitness,
    ShieldingResult,
    SmearingResult,
    StepDelta,
    TransmissionProfile,
    ValidationError,
    brickwork_step,
    classical_channel_update,
    commutator,
    delta_indistinguishable,
    double_commutator,
    embed_local,
    expectation,
    find_zeros,
    gaussian_smear,
    gaussian_smear_spectral,
    invariance_criterion_operator,
    invariance_criterion_state,
    spectrum_condition_falsifier,
    lightcone,
    local_mark_profile,
    luders_update,
    manifested,
    mark_delta,
    nearest_projection,
    op_norm,
    profile,
    manifestation_witness,
    random_instance,
    run_verify,
    shielding_check,
    smear_convergence,
    support_region,
    validate,
)

__all__ = [
    "DimensionError",
    "DynamicalSystem",
    "IndistinguishabilityReport",
    "LatticeSystem",
    "FalsifierReport",
    "ManifestationWitness",
    "ShieldingResult",
    "SmearingResult",
    "StepDelta",
    "TransmissionProfile",
    "ValidationError",
    "brickwork_step",
    "classical_channel_update",
    "commutator",
    "delta_indistinguishable",
    "double_commutator",
    "embed_local",
    "expectation",
    "find_zeros",
    "gaussian_smear",
    "gaussian_smear_spectral",
    "invariance_criterion_operator",
    "invariance_criterion_state",
    "spectrum_condition_falsifier",
    "lightcone",
    "local_mark_profile",
    "luders_update",
    "manifested",
    "mark_delta",
    "nearest_projection",
    "op_norm",
    "profile",
    "manifestation_witness",
    "random_instance",
    "run_verify",
    "shielding_check",
    "smear_convergence",
    "support_region",
    "validate",
]

__version__ = "0.1.0"
