"""Exception hierarchy shared by all modules."""


class TangleSurgError(Exception):
    """Base class for library errors."""


class StructureError(TangleSurgError, ValueError):
    """Malformed input: bad PD code, unparsable expression, inconsistent orientation."""


class DomainError(TangleSurgError, ValueError):
    """Input outside the mathematical domain of an operation (infeasible parameters)."""


class ContractError(DomainError):
    """A combinatorial precondition failed; ``identity`` names the failed check."""

    def __init__(self, identity: str, message: str):
        super().__init__(f"{identity}: {message}")
        self.identity = identity


class ResourceError(TangleSurgError, RuntimeError):
    """A computation exceeded its fixed budget (e.g. the bracket crossing cap)."""
