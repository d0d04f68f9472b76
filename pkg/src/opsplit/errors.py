"""Exception types shared across the package."""


class OpSplitError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(OpSplitError):
    """Operands live in different ambient dimensions."""


class SingularMatrix(OpSplitError):
    """Linear solve rejected: condition estimate above the configured limit."""


class RankDeficient(OpSplitError):
    """A vector is numerically dependent on its predecessors."""


class NonComputableResolvent(OpSplitError):
    """Resolvent requested for an operator kind outside the computable set."""


class SingularResolvent(OpSplitError):
    """Id + L is numerically rank-deficient, so the resolvent solve fails."""


class MonotonicityViolation(OpSplitError):
    """Resolvent requested for an affine map whose symmetric part is not PSD."""


class UnknownForm(OpSplitError):
    """Evaluation-path tag not valid for the requested operator."""


class UnknownSuite(OpSplitError):
    """Verification suite tag not present in the registry."""


class ConfigError(OpSplitError):
    """Run configuration failed to parse or validate."""
