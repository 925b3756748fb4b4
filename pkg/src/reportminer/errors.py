"""Exception types shared across the toolkit."""


class ReportMinerError(Exception):
    """Base class for all toolkit errors."""


class MalformedRecord(ReportMinerError):
    """A corpus input line could not be parsed; the message names the line."""


class DuplicateDocument(ReportMinerError):
    """Two input documents share a doc_id."""


class EmptyVocabulary(ReportMinerError):
    """No token survives the min_count filter."""


class ZeroVector(ReportMinerError):
    """Cosine similarity was asked for a zero-length vector."""


class UnknownTerm(ReportMinerError):
    """A queried term is not in the embedding vocabulary."""


class UnknownSeed(ReportMinerError):
    """A lexicon seed is missing from an ensemble member's vocabulary."""


class EmptyPartition(ReportMinerError):
    """Gini impurity of an empty label partition is undefined."""


class DegenerateLabels(ReportMinerError):
    """Training set has fewer than two examples or a single label."""


class FeatureMismatch(ReportMinerError):
    """Prediction input does not match the model's feature schema."""


class UnknownEntity(ReportMinerError):
    """No entity with the given canonical id exists in the registry."""


class NoTransactions(ReportMinerError):
    """Association-rule statistics need at least one transaction."""


class EmptyQuery(ReportMinerError):
    """A search request carried no filter at all."""


class MissingArtifact(ReportMinerError):
    """A pipeline stage ran before the stage that produces its input."""


class StoreError(ReportMinerError):
    """A store file is absent or corrupt; the message names the file."""
