"""Typed errors shared across the package.

Every rejection the library performs deliberately gets its own class so
callers (and the command line driver) can map failures to exit codes
without string matching.
"""


class LefscalcError(Exception):
    """Base class for all deliberate rejections."""


class ParseError(LefscalcError):
    """Malformed problem file or report payload."""


class InvalidComplexError(LefscalcError):
    """A simplicial complex failed validation (see validate() for details)."""


class CellSpaceUnsupportedError(LefscalcError):
    """Operation needs simplicial incidence data but got a bare cell space."""


class NonSimplicialMapError(LefscalcError):
    """A vertex map sends some simplex to a non-simplex of the target."""


class FixedPointNotSimplicialError(LefscalcError):
    """The map has geometric fixed points that are not fixed vertices.

    Remedy: re-express the problem on a barycentric subdivision so the
    offending fixed points become vertices.
    """


class NotHyperbolicError(LefscalcError):
    """det(I - A) = 0 for some component's normal matrix A."""


class NotLocalizableError(LefscalcError):
    """1 is an eigenvalue of the normal map; the local term is undefined."""


class GenericityError(LefscalcError):
    """A vertex functional takes equal values on the ends of an edge."""

    def __init__(self, message: str, edges=()):
        super().__init__(message)
        self.edges = tuple(edges)


class NoApplicableRegimeError(LefscalcError):
    """No hypothesis justifies equating the cycle table with the fixed-point
    cycle: spectrum meets [1, oo) and neither the complex-model nor the
    non-characteristic assertion was supplied."""


class DegenerateInputError(LefscalcError):
    """Input is structurally inconsistent (mismatched parents, bad pattern,
    missing normal data, out-of-range size bounds)."""
