"""Exception and warning types shared across the package."""


class ParitySimError(Exception):
    """Base class for every error this package raises on purpose."""


class ShapeError(ParitySimError):
    """Array length or grid mismatch."""


class ZeroNormError(ParitySimError):
    """Input has zero norm and cannot be normalized."""


class NormalizationError(ParitySimError):
    """State or amplitude pair is not normalized."""


class OutOfSubspaceError(ParitySimError):
    """Mode does not lie in the two-dimensional reference subspace."""


class DomainError(ParitySimError):
    """Argument outside the physically meaningful range."""


class DegenerateStateError(ParitySimError):
    """Two-photon amplitude vanishes identically after symmetrization."""


class DegenerateBaselineError(ParitySimError):
    """Interferogram baseline is zero, so normalization is undefined."""


class InsufficientDataError(ParitySimError):
    """Too few samples for the requested fit."""


class DegenerateFitError(ParitySimError):
    """Fit input carries no usable structure (constant or non-convergent)."""


class ResolutionWarning(UserWarning):
    """Delay step too coarse to resolve the pump-period fringe."""
