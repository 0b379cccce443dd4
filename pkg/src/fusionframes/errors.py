"""Exception hierarchy.

Every library error derives from :class:`FrameToolError` and carries a
stable ``tag`` used by the command line front end to build greppable
``error[Tag]`` messages.
"""


class FrameToolError(Exception):
    """Base class for all library errors."""

    tag = "Error"


class DimensionMismatchError(FrameToolError):
    """Operands live in different ambient dimensions."""

    tag = "DimensionMismatch"


class InvalidDimsError(FrameToolError):
    """Dimension parameters violate a precondition such as 1 <= s <= N."""

    tag = "InvalidDims"


class RankDeficientError(FrameToolError):
    """Input columns are numerically dependent."""

    tag = "RankDeficient"


class NotSymmetricError(FrameToolError):
    """Eigensolver input is not symmetric within tolerance."""

    tag = "NotSymmetric"


class NoConvergenceError(FrameToolError):
    """Iterative solver exhausted its sweep budget."""

    tag = "NoConvergence"


class DegenerateDrawError(FrameToolError):
    """Random draw repeatedly produced a vector of negligible norm."""

    tag = "DegenerateDraw"


class TooFewSubspacesError(FrameToolError):
    """Pairwise statistics need at least two subspaces."""

    tag = "TooFewSubspaces"


class InvalidDeltaError(FrameToolError):
    """Tolerance parameter delta outside its admissible interval."""

    tag = "InvalidDelta"


class InvalidBetaError(FrameToolError):
    """Ratio parameter beta outside its admissible interval."""

    tag = "InvalidBeta"


class ConfigInvalidError(FrameToolError):
    """Experiment configuration violates an invariant."""

    tag = "ConfigInvalid"


class FrameFormatError(FrameToolError):
    """Frame file is malformed or fails validation."""

    tag = "FrameFormat"


class TrialFailureError(FrameToolError):
    """Too many Monte Carlo trials failed to produce a result."""

    tag = "TrialFailure"
