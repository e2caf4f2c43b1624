"""Exception types shared across the package."""


class WTopError(Exception):
    """Base class for all errors raised by wtop."""


class MonoidError(WTopError):
    """A multiplication table fails the monoid axioms."""


class MSetError(WTopError):
    """An action table or map fails the M-set axioms."""


class TopologyError(WTopError):
    """An endomap of the classifier is not a weak topology, or a
    constructor received an argument outside its domain."""


class GuardExceeded(WTopError):
    """An exhaustive search would exceed its configured size bound."""


class TheoremViolation(WTopError):
    """A computation contradicted a property that is supposed to hold.

    This is raised loudly instead of silently falling back, since the
    engine doubles as a checker for the underlying theory.
    """


class NotApplicable(WTopError):
    """An operation was called outside its precondition (for example a
    separated-reflection on an object whose diagonal closure is not closed)."""


class ParseError(WTopError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
