"""Exception types shared by every module."""


class TripointError(Exception):
    """Base class; the CLI maps every subclass to exit code 2."""


class StructuralError(TripointError, ValueError):
    """Malformed input: wrong shapes, empty sets, missing fields."""


class DomainError(TripointError, ValueError):
    """Well-formed input outside an operation's domain (e.g. t < 0, |M| < 3)."""
