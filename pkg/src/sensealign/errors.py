"""Exception types raised across the toolkit.

Every error that callers are expected to catch has its own class here so
that command line tools and the HTTP service can map failures to messages
without string matching.
"""


class SenseAlignError(Exception):
    """Base class for all toolkit errors."""


class MalformedDocument(SenseAlignError):
    """An input document does not have the expected structure."""


class BadColumnCount(MalformedDocument):
    """A delimited row has the wrong number of columns."""


class EmptyLemma(MalformedDocument):
    """A dictionary row carries an empty headword."""


class MissingFile(SenseAlignError):
    """A file referenced by a manifest or config does not exist."""


class NonPositiveAlpha(SenseAlignError):
    """A smoothing or decay rate must be strictly positive."""


class InconsistentDimension(SenseAlignError):
    """Vectors in one table disagree on dimensionality."""


class EmptyFile(SenseAlignError):
    """A resource file contains no usable rows."""


class EmptyDefinition(SenseAlignError):
    """A sense with no tokens cannot fill an alignment matrix."""


class BadWeight(SenseAlignError):
    """A numeric weight field failed to parse."""


class SingleClassData(SenseAlignError):
    """Training data must contain at least two distinct labels."""


class DimensionMismatch(SenseAlignError):
    """Feature vectors do not match the trained model dimension."""


class BadModelFile(SenseAlignError):
    """A saved model file is unreadable or has the wrong version."""


class MatchingImpossible(SenseAlignError):
    """Degree lower bounds cannot be satisfied by any matching."""


class BadBounds(SenseAlignError):
    """Degree bounds are negative or upper is below lower."""


class TooLargeToEnumerate(SenseAlignError):
    """Exact enumeration was requested for an intractable size."""


class EmptyGraph(SenseAlignError):
    """A graph operation needs at least one node."""


class EmptyGold(SenseAlignError):
    """An evaluation needs a non-empty gold standard."""


class EmptyInput(SenseAlignError):
    """An aggregate needs at least one element."""


class LengthMismatch(SenseAlignError):
    """Parallel sequences differ in length."""


class UnknownLabel(SenseAlignError):
    """A label is outside the declared class set."""


class InsufficientData(SenseAlignError):
    """Agreement needs at least two units with two or more labels."""


class ConfigError(SenseAlignError):
    """A pipeline config references unknown components or bad values."""
