"""Exception types shared across the package."""

from __future__ import annotations


class ConvexaError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ConvexaError):
    """Malformed code text or realization JSON.

    Carries the 1-based line number (and column when known) of the offending
    input so CLI users get a pointer into their file.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


class NotAFace(ConvexaError):
    """A codeword was used as a face of a complex it does not belong to."""


class NotAnIntersection(ConvexaError):
    """Sigma is not the intersection of two or more facets."""


class WrongFacetCount(ConvexaError):
    """An operation that needs exactly three facets got something else."""


class TooManyFacets(ConvexaError):
    """An operation restricted to at most three facets got more."""


class InvalidWitness(ConvexaError):
    """A path-of-facets witness does not satisfy the defining conditions."""


class NoParent(ConvexaError):
    """No base codeword contains the requested extra codeword."""


class RefineExhausted(ConvexaError):
    """The construct-verify-refine loop ran out of refinement budget."""


class NoDedicatedVertex(ConvexaError):
    """A parent codeword has no unused dedicated universe vertex left."""


class AlreadyRealized(ConvexaError):
    """Asked to slice in a codeword the realization already produces."""


class NotMaxIntersectionComplete(ConvexaError):
    """The code is missing an intersection of maximal codewords."""
