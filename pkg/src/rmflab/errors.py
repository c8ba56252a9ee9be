"""Exception hierarchy shared across the package.

CLI exit codes: ConfigError -> 2, BudgetError -> 3, NumericalError -> 4.
"""


class RmflabError(Exception):
    """Base class for package errors."""


class ConfigError(RmflabError):
    """Invalid experiment configuration."""


class BudgetError(RmflabError):
    """A point/tuple/memory budget would be exceeded."""


class NumericalError(RmflabError):
    """A numerical procedure failed to converge."""


class ContractError(RmflabError):
    """Mismatched companion objects (e.g. profile height vs table height)."""


class DomainError(RmflabError, ValueError):
    """Argument outside the documented domain."""


class InfeasibleError(RmflabError):
    """A requested construction cannot be materialized."""
