"""Exception hierarchy shared by every module in the package.

Everything derives from :class:`QJacobiError` so callers can catch the
whole family at once.  The leaf classes also inherit the closest builtin
(ValueError, ArithmeticError, RuntimeError) so that generic handling
keeps working for code that is unaware of this package.
"""


class QJacobiError(Exception):
    """Base class for all errors raised by this package."""


class DomainViolation(QJacobiError, ValueError):
    """Input lies outside the admissible parameter domain."""


class ZeroArgument(QJacobiError, ValueError):
    """An argument that must be nonzero was zero (e.g. theta at 0)."""


class DivergentArgument(QJacobiError, ValueError):
    """A non-terminating series was requested outside its radius."""


class PoleInDenominator(QJacobiError, ArithmeticError):
    """A denominator Pochhammer factor vanishes before the series stops."""


class SingularParameter(QJacobiError, ValueError):
    """Parameters sit on (or within tolerance of) an excluded q-lattice."""


class SummationOutOfRange(QJacobiError, ValueError):
    """A raw series representation was forced outside its validity range."""


class NonConvergence(QJacobiError, RuntimeError):
    """An iteration or truncated evaluation failed to converge."""


class ConvergenceFailure(QJacobiError, RuntimeError):
    """A limit probed at increasing depth did not settle."""


class ValidationFailed(QJacobiError, RuntimeError):
    """An internal cross-check (phase constancy, realness, ...) failed."""


class SingularWronskian(QJacobiError, ArithmeticError):
    """The Wronskian normalizing a kernel is numerically zero."""


class NonSimpleZero(QJacobiError, RuntimeError):
    """A located zero has a derivative too small to treat as simple."""


class WindowTooWide(QJacobiError, ValueError):
    """A search window cannot be resolved at the grid density used."""


class WindowTooNarrow(QJacobiError, RuntimeError):
    """The search window cap was reached before contributions decayed."""


class QuadratureFailure(QJacobiError, RuntimeError):
    """Adaptive integration exhausted its budget above tolerance."""


class PoleEncountered(QJacobiError, ArithmeticError):
    """Evaluation requested exactly on (or too near) a pole."""
