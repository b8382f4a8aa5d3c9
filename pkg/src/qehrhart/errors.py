class QEhrhartError(Exception):
    """Base class for library errors."""


class ValidationError(QEhrhartError):
    """A (polytope, linear form) pair violates Positivity or Genericity."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class PreconditionError(QEhrhartError):
    pass


class ConsistencyError(QEhrhartError):
    """An internal cross-check failed; indicates a bug, never expected."""
