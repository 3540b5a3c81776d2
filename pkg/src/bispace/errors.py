"""Exception types shared across the package."""


class BispaceError(Exception):
    pass


class DomainError(BispaceError, ValueError):
    """An argument lies outside the domain of an operation."""


class GroupError(DomainError):
    """A table or subset fails the group axioms."""


class CarrierEscape(BispaceError):
    """An action produced a value outside its declared carrier.

    Kept separate from axiom violations: an escape means the action is not
    even a map into the carrier, so the axioms cannot be evaluated.
    """

    def __init__(self, g, x1, x2, value):
        self.triple = (g, x1, x2)
        self.value = value
        super().__init__(f"apply({g!r}, {x1!r}, {x2!r}) = {value!r} escapes the carrier")


class UnsupportedInstance(BispaceError):
    """The instance cannot be decided by the available procedures."""
