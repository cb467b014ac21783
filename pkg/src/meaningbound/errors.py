"""Exception hierarchy shared across the package."""


class MeaningBoundError(Exception):
    """Base class for all errors raised by this package."""


class InvalidCountError(MeaningBoundError, ValueError):
    """A count is not a non-negative integer."""


class CountOverflowError(InvalidCountError, OverflowError):
    """A count exceeds the exact 63-bit range (2**63 - 1)."""


class ZeroDenominatorError(MeaningBoundError, ZeroDivisionError):
    """A weight or bound was requested with a zero denominator."""


class InconsistentCountsError(MeaningBoundError, ValueError):
    """Counts violate a structural constraint (e.g. a word count above the page total)."""


class QuerySyntaxError(MeaningBoundError, ValueError):
    """A query string does not follow the canonical syntax."""


class CorpusError(MeaningBoundError):
    """Base class for corpus ingestion and indexing errors."""


class DuplicateDocIdError(CorpusError):
    """Two documents in one corpus share a doc id."""


class CorpusFormatError(CorpusError):
    """A corpus input file is malformed."""


class ProviderError(MeaningBoundError):
    """Base class for count-provider errors."""


class MissingFixtureEntryError(ProviderError):
    """A fixture was asked for a query it does not contain. Never guessed as zero."""


class FixtureFormatError(ProviderError):
    """A fixture file is malformed or contains non-canonical query keys."""


class TransportFailureError(ProviderError):
    """The web provider gave up after its retry budget."""


class MalformedResponseError(ProviderError):
    """The web provider got a response it could not extract a count from."""


class MissingApiKeyError(ProviderError):
    """The configured API-key environment variable is not set."""


class StorageFailureError(ProviderError):
    """The count cache journal could not be read or appended."""
