"""Exception hierarchy shared by every sniplab module.

Each domain error carries a stable ``name`` so the CLI can report it
without depending on the Python class path.
"""

from __future__ import annotations


class SnipLabError(Exception):
    """Base class for domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class ParseError(SnipLabError, ValueError):
    pass


class ShapeMismatch(SnipLabError, ValueError):
    pass


class SingularBlock(SnipLabError, ArithmeticError):
    pass


class InvalidOp(SnipLabError, ValueError):
    pass


class SizeLimit(SnipLabError):
    pass


class OutOfRange(SnipLabError, ValueError):
    pass


class NotNeutral(SnipLabError, ValueError):
    pass


class NotABasis(SnipLabError, ValueError):
    pass


class PairTooSmall(SnipLabError, ValueError):
    pass


class NotNeutralSquare(SnipLabError, ValueError):
    pass


class DegenerateKernel(SnipLabError, ValueError):
    pass


class NoSmallEps(SnipLabError):
    pass


class ZeroWeight(SnipLabError, ValueError):
    pass


class GridTooLarge(SnipLabError):
    pass


class NotACutVertex(SnipLabError, ValueError):
    pass


class NotUpper(SnipLabError, ValueError):
    pass
