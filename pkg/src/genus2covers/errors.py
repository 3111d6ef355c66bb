"""Exception hierarchy.

Three families, matching the CLI exit codes:

* ``ParseError`` -- malformed descriptor / element / argument text (exit 2);
* ``PreconditionError`` -- well-formed input that violates an operation's
  precondition (exit 3);
* ``FalsificationError`` -- an identity that is a theorem failed to hold.
  These indicate a bug, never bad input (exit 4).
"""


class Genus2Error(Exception):
    """Base class for every error raised by this package."""


class ParseError(Genus2Error, ValueError):
    pass


class PreconditionError(Genus2Error, ValueError):
    pass


class DescriptorMismatch(PreconditionError, TypeError):
    """Operands live in different, incompatible coefficient rings."""


class NotAUnit(PreconditionError, ZeroDivisionError):
    """Division by an element that is not invertible."""


class UnsupportedRing(PreconditionError):
    """The operation is not available over this kind of ring."""


class NotThetaSmooth(PreconditionError):
    """gamma fixes infinity, so no genus-2 curve exists for this input."""


class DescentError(PreconditionError):
    """The Moebius map computed in a splitting field is not defined over the base.

    Raised when the supplied root matching is not Galois-equivariant.
    """


class BadParameter(PreconditionError):
    """A family was specialized at a parameter value in its bad locus."""


class FalsificationError(Genus2Error, RuntimeError):
    pass


class InternalConsistencyError(FalsificationError):
    """Two independent routes to the same quantity disagreed."""


class SquareRootExtractionFailed(FalsificationError):
    pass
