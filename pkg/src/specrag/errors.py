"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SpecRagError(Exception):
    """Base class for all package errors."""


# --- document model / parsing ------------------------------------------------

class MalformedIdentifier(SpecRagError):
    """No usable specification digit group in an identifier string."""


class ParseError(SpecRagError):
    """A document file could not be parsed.

    Carries the offending source location when known.
    """

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        loc = ""
        if path is not None:
            loc += f" [{path}"
            loc += f":{line}]" if line is not None else "]"
        elif line is not None:
            loc += f" [line {line}]"
        super().__init__(message + loc)
        self.path = path
        self.line = line


class DuplicateDocName(SpecRagError):
    """Two documents in the same corpus share a doc_name."""


# --- chunking / media ---------------------------------------------------------

class MismatchedDoc(SpecRagError):
    """Chunks handed to a coverage check came from a different document."""


class UnknownMedia(SpecRagError):
    """A chunk references a media block with no registry record."""


class AlreadyTagged(SpecRagError):
    """tag_chunk called on a chunk whose text already carries markers."""


# --- providers ----------------------------------------------------------------

class ProviderError(SpecRagError):
    """An external model provider call failed."""

    retryable = False


class ProviderTimeout(ProviderError):
    retryable = True


class ProviderRefusal(ProviderError):
    retryable = True


class TransportError(ProviderError):
    retryable = True


class EmptyMedia(ProviderError):
    """A media block carries no describable content (e.g. a 0-row table)."""


# --- index --------------------------------------------------------------------

class DuplicateChunkId(SpecRagError):
    """chunk_id already present in the index."""


class UnknownChunk(SpecRagError):
    """chunk_id not present in the index."""


class EmptyIndex(SpecRagError):
    """Retrieval attempted against an index with no chunks."""


class SchemaVersionMismatch(SpecRagError):
    """A persisted index was written by an incompatible schema version."""


class ChecksumError(SpecRagError):
    """A persisted index segment is corrupt or truncated."""


# --- answer / eval / config ----------------------------------------------------

class ContextEmpty(SpecRagError):
    """Prompt assembly attempted with an empty fused context."""


class EmptySuite(SpecRagError):
    """An evaluation suite contains no records."""


class ConfigError(SpecRagError):
    """A configuration file failed schema validation.

    ``problems`` lists every violation found, not just the first.
    """

    def __init__(self, problems: list[str]):
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {p}" for p in problems))
        self.problems = list(problems)
