"""Exception types shared across the package."""


class PhotonPostError(Exception):
    """Base class for all errors raised by photonpost."""


class NotNormalized(PhotonPostError):
    """Probabilities do not sum to one within tolerance."""


class NonSquare(PhotonPostError):
    """A square matrix was required."""


class DimensionTooLarge(PhotonPostError):
    """Matrix dimension exceeds the supported permanent size."""


class MismatchedTotals(PhotonPostError):
    """Row and column multiplicities must repeat to the same total."""


class BadModeIndex(PhotonPostError):
    """Mode index out of range or repeated."""


class RowsNotOrthonormal(PhotonPostError):
    """Supplied rows are not orthonormal within tolerance."""


class NotUnitary(PhotonPostError):
    """Matrix is not unitary within tolerance."""


class DimensionMismatch(PhotonPostError):
    """Sizes of inputs, interferometer and pattern do not agree."""


class ZeroProbabilityPattern(PhotonPostError):
    """Requested figures of merit for an impossible detection pattern."""


class BadParameters(PhotonPostError):
    """Scheme parameters outside their valid range."""


class DegenerateTheta(PhotonPostError):
    """First-stage mixing angle leaves nothing to purify."""


class BadDistributionShape(PhotonPostError):
    """Photon-number distribution does not have the required support."""


class ConfigError(PhotonPostError):
    """Command configuration failed validation."""
