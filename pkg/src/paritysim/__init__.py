"""Simulator of photon pairs encoded in one-dimensional spatial parity.

The package models a pump beam whose transverse parity is set by a phase
plate, the down-converted two-photon parity state it produces, and the
coincidence interferograms measured behind a delay-scanned interferometer
that may carry a parity-sensitive mirror in one arm.
"""

from .analysis import (
    FitResult,
    fit_theta_sweep,
    fit_theta_values,
    lcg_noise,
    lcg_uniform,
    plateau_maxima,
    read_theta_csv,
    sin_squared_model,
)
from .elements import (
    IDENTITY,
    PF,
    SF,
    Element,
    apply_element,
    apply_pf,
    apply_pr,
    apply_sequence,
    apply_sf,
    element_matrix,
    isomorphism_residual,
    pr,
    random_word,
    word_matrix,
    word_to_string,
)
from .errors import (
    DegenerateBaselineError,
    DegenerateFitError,
    DegenerateStateError,
    DomainError,
    InsufficientDataError,
    NormalizationError,
    OutOfSubspaceError,
    ParitySimError,
    ResolutionWarning,
    ShapeError,
    ZeroNormError,
)
from .interferometer import (
    Interferogram,
    InterferometerConfig,
    OutcomeRates,
    VisibilityResult,
    coincidence_profile,
    coincidence_rate,
    fringe_phase,
    g2_closed_form,
    interferogram_sweep,
    outcome_probabilities,
    port_transfer,
    ps_mzi,
    theta_sweep,
    traditional_mzi,
    visibility,
)
from .modes import (
    Grid,
    ParityParts,
    ParityQubit,
    ReferenceBasis,
    SpatialMode,
    make_mode,
    overlap,
    parity_decompose,
    phase_aligned_distance,
    poincare_coords,
    qubit,
    qubit_extract,
    ray_distance,
)
from .source import (
    SPEED_OF_LIGHT,
    SpectralAmplitude,
    TwoPhotonParityState,
    bell_state,
    concurrence,
    make_spectrum,
    pump_to_biphoton,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateBaselineError",
    "DegenerateFitError",
    "DegenerateStateError",
    "DomainError",
    "Element",
    "FitResult",
    "Grid",
    "IDENTITY",
    "InsufficientDataError",
    "Interferogram",
    "InterferometerConfig",
    "NormalizationError",
    "OutOfSubspaceError",
    "OutcomeRates",
    "PF",
    "ParityParts",
    "ParityQubit",
    "ParitySimError",
    "ReferenceBasis",
    "ResolutionWarning",
    "SF",
    "SPEED_OF_LIGHT",
    "ShapeError",
    "SpatialMode",
    "SpectralAmplitude",
    "TwoPhotonParityState",
    "VisibilityResult",
    "ZeroNormError",
    "apply_element",
    "apply_pf",
    "apply_pr",
    "apply_sequence",
    "apply_sf",
    "bell_state",
    "coincidence_profile",
    "coincidence_rate",
    "concurrence",
    "element_matrix",
    "fit_theta_sweep",
    "fit_theta_values",
    "fringe_phase",
    "g2_closed_form",
    "interferogram_sweep",
    "isomorphism_residual",
    "lcg_noise",
    "lcg_uniform",
    "make_mode",
    "make_spectrum",
    "outcome_probabilities",
    "overlap",
    "parity_decompose",
    "phase_aligned_distance",
    "plateau_maxima",
    "poincare_coords",
    "port_transfer",
    "pr",
    "ps_mzi",
    "pump_to_biphoton",
    "qubit",
    "qubit_extract",
    "random_word",
    "ray_distance",
    "read_theta_csv",
    "sin_squared_model",
    "theta_sweep",
    "traditional_mzi",
    "visibility",
    "word_matrix",
    "word_to_string",
]
