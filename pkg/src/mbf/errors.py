"""Exception hierarchy shared by all modules."""


class MBFError(Exception):
    """Base class for errors raised by this package."""


class ContractViolation(MBFError, ValueError):
    """An argument broke a documented precondition (range, monotonicity, antichain)."""


class ResourceLimitError(MBFError):
    """The request would materialize more than the configured size cap."""


class UnsupportedScaleError(ResourceLimitError):
    """The request is beyond what can be computed at desk scale."""


class InconsistentKnowledgeError(ContractViolation):
    """A registration contradicts knowledge already held by the store."""


class OracleInconsistencyError(MBFError):
    """Oracle answers are not consistent with any monotone function."""


class RecoveryMismatchError(MBFError):
    """Identification returned sets that differ from the hidden function's."""
