"""Exception types shared across the package.

Every error raised on bad input derives from ``BstError`` so callers (and
the command line front end) can catch one base class and map it to a
diagnostic exit.  Failures of *checked properties* are never raised; they
are reported as data by the validation and grading functions.
"""

from __future__ import annotations


class BstError(Exception):
    """Base class for all input and usage errors raised by this package."""


class EmptyModel(BstError):
    """A model must contain at least one point event."""


class CycleDetected(BstError):
    """The supplied ordering pairs are not acyclic, so no strict partial
    order contains them."""


class UnknownPoint(BstError):
    """A point id was referenced that the model does not declare."""


class SameHistory(BstError):
    """Choice points are only defined for a pair of distinct histories."""


class MisclassifiedEvent(BstError):
    """An event was passed in a role (initial / outcome) it does not have."""


class InvalidSpread(BstError):
    """A spread failed structural validation where a valid one is required."""


class NotInconsistencyType(BstError):
    """The vector handed to the common-cause checker is consistent; the
    screening conditions are only defined for inconsistent vectors."""


class PreconditionFailed(BstError):
    """An n-spread handed to the common-cause machinery is not space-like
    and 1-consistent, or a search target is not of the required kind."""


class ParseError(BstError):
    """A model document could not be parsed against the schema."""


class UnknownReference(BstError):
    """A model document references an undeclared point, event, or spread."""


class NotEigenstate(BstError):
    """The state is not an eigenstate of the observable, so no eigenvalue
    can be reported."""


class BadFlag(BstError):
    """A command line flag value could not be interpreted."""
