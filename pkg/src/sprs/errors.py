"""Exception hierarchy shared across the package."""


class SprsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SprsError, ValueError):
    """Malformed textual input (pointer strings, patterns, rules)."""


class DomainError(SprsError, ValueError):
    """An identity or removal set falls outside the domain of a string."""


class CapacityError(SprsError):
    """A brute-force search was requested beyond its configured bound."""


class NotApplicableError(SprsError):
    """A reduction rule does not match the string it was applied to."""

    def __init__(self, rule, string, step=None):
        self.rule = rule
        self.string = string
        self.step = step
        where = f" at step {step}" if step is not None else ""
        super().__init__(f"rule {rule} not applicable{where} to {list(string)}")


class StructureError(SprsError):
    """A graph violates the reduction-graph invariants."""
