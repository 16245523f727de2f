"""Exception hierarchy shared by every module."""


class HornError(Exception):
    """Base class for all library errors."""


class InvariantError(HornError, ValueError):
    """Input violates a structural precondition (the rule is named in the message)."""

    def __init__(self, rule, detail=""):
        self.rule = rule
        msg = rule if not detail else f"{rule}: {detail}"
        super().__init__(msg)


class GenericityFailure(HornError):
    """A parameter or weight vector turned out to be non-generic.

    Raised when a zero divisor shows up in a recurrence, two exponent roots
    collide, or an exponent system has no solution.  Drivers catch this and
    resample.
    """


class ResourceExhausted(HornError):
    """A computation exceeded its configured budget."""

    def __init__(self, msg, **state):
        self.state = state
        super().__init__(msg)


class IdentityViolation(HornError):
    """Two independent routes to the same quantity disagree (internal bug signal)."""


class NonIntegralVolume(HornError):
    """The volume derived from the degree identity is not a positive integer."""


class NotInColumnSpace(HornError):
    """A vector is not in the rational column space of B."""


class Violation(HornError):
    """A series or polynomial fails an operator check; carries the witness term."""

    def __init__(self, msg, witness=None):
        self.witness = witness
        super().__init__(msg)


class UnsupportedShape(HornError):
    """An operator pair does not have the f(t)Q - y g(t)P shape."""


class ParseError(HornError, ValueError):
    def __init__(self, msg, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {msg}")
