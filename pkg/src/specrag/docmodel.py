"""Canonical document model and specification-metadata extraction.

A :class:`Document` is an immutable-by-convention tree: a virtual level-0
root section holding nested :class:`Section` nodes, each carrying ordered
:class:`Block` content (paragraphs, tables, images). Every document knows
its :class:`SpecMetadata` (release / series / specification / version),
which later drives metadata-filtered retrieval.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .errors import MalformedIdentifier

logger = logging.getLogger(__name__)

PARAGRAPH = "paragraph"
TABLE = "table"
IMAGE = "image"
BLOCK_KINDS = (PARAGRAPH, TABLE, IMAGE)

# A specification number is a >=4 digit group ("23548"), optionally written
# with a series dot ("23.548") and followed by sub-identifiers ("-i30", ".h00").
_SPEC_CORE_RE = re.compile(r"\d{4,}|\d{2}\.\d{3}")
_VERSION_RE = re.compile(r"\bV(\d+)\.(\d+)\.(\d+)\b")
_RELEASE_RE = re.compile(r"\bR(?:el(?:ease)?[ -]?)?(\d{1,2})\b", re.IGNORECASE)
_SUFFIX_VERSION_RE = re.compile(r"^([a-z])(\d)(\d)$")


@dataclass(frozen=True)
class SpecMetadata:
    """Structured identity of a specification document.

    All fields are optional-empty: downstream filtering treats an empty
    field as a wildcard rather than an error.
    """

    release: tuple[str, ...] = ()
    series: str = ""
    specification: str = ""
    version: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        for r in self.release:
            if not (r.isdigit() and 1 <= len(r) <= 2):
                raise ValueError(f"release must be a 1-2 digit string, got {r!r}")
        if self.version is not None:
            if len(self.version) != 3 or any(v < 0 for v in self.version):
                raise ValueError(f"version must be three non-negative ints, got {self.version!r}")

    def version_string(self) -> str | None:
        """Render the version triple back to its ``Vx.y.z`` form."""
        if self.version is None:
            return None
        return "V{}.{}.{}".format(*self.version)


@dataclass
class Block:
    """One content unit inside a section.

    ``media_id`` is present exactly when the block is a table or an image;
    ``caption`` travels with media blocks so descriptions can mention it.
    """

    kind: str
    text: str = ""
    media_id: str | None = None
    caption: str = ""
    table_cells: list[list[str]] | None = None
    image_bytes_ref: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in BLOCK_KINDS:
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.kind == PARAGRAPH and self.media_id is not None:
            raise ValueError("paragraph blocks must not carry a media_id")
        if self.kind != PARAGRAPH and not self.media_id:
            raise ValueError(f"{self.kind} blocks require a media_id")
        if self.table_cells is not None:
            widths = {len(row) for row in self.table_cells}
            if len(widths) > 1:
                raise ValueError("table_cells must be rectangular")


@dataclass
class Section:
    heading: str
    level: int
    blocks: list[Block] = field(default_factory=list)
    children: list[Section] = field(default_factory=list)

    def walk(self):
        """Yield this section and all descendants depth-first."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class Document:
    doc_name: str
    metadata: SpecMetadata
    root: Section

    def __post_init__(self) -> None:
        if self.root.level != 0:
            raise ValueError("document root must be the virtual level-0 section")
        for section in self.root.walk():
            for child in section.children:
                if child.level <= section.level:
                    raise ValueError(
                        f"section {child.heading!r} (level {child.level}) must be "
                        f"deeper than its parent (level {section.level})"
                    )
                if not child.heading:
                    raise ValueError("non-root sections need a heading")

    def iter_blocks(self):
        """All blocks in document order."""
        for section in self.root.walk():
            yield from section.blocks


def decode_version_suffix(suffix: str) -> tuple[int, int, int] | None:
    """Decode a filename version suffix like ``i30`` to ``(18, 3, 0)``.

    The major component is letter-encoded: a=10 ... z=35. Returns None
    when the suffix does not follow the letter-digit-digit shape.
    """
    m = _SUFFIX_VERSION_RE.match(suffix.lower())
    if not m:
        return None
    major = ord(m.group(1)) - ord("a") + 10
    return (major, int(m.group(2)), int(m.group(3)))


def parse_spec_identifier(raw: str) -> SpecMetadata:
    """Extract specification metadata from a filename stem or header string.

    Every field the string determines is filled; the rest stay empty.
    The series is the first two digits of the specification number.
    Raises :class:`MalformedIdentifier` when no specification digit group
    can be found.
    """
    core = _SPEC_CORE_RE.search(raw)
    if core is None:
        raise MalformedIdentifier(f"no specification digit group in {raw!r}")

    # The specification string is the whole token around the digit group,
    # e.g. "23548-i30" out of "23548-i30 V18.3.0 R18".
    start, end = core.span()
    while start > 0 and not raw[start - 1].isspace():
        start -= 1
    while end < len(raw) and not raw[end].isspace():
        end += 1
    specification = raw[start:end].strip().strip(".,;:")

    series = re.sub(r"\D", "", core.group())[:2]

    version: tuple[int, int, int] | None = None
    vm = _VERSION_RE.search(raw)
    if vm:
        version = (int(vm.group(1)), int(vm.group(2)), int(vm.group(3)))

    releases: list[str] = []
    for rm in _RELEASE_RE.finditer(raw):
        if core.start() <= rm.start() < core.end():
            continue
        tok = rm.group(1)
        if tok not in releases:
            releases.append(tok)

    # Filenames also letter-encode the version after the spec number
    # ("23548-i30" pairs with V18.3.0); cross-check when both appear.
    suffix = specification.rsplit("-", 1)[-1] if "-" in specification else ""
    decoded = decode_version_suffix(suffix)
    if decoded is not None and version is not None and decoded != version:
        logger.warning(
            "identifier %r: version suffix %r decodes to %s but explicit version is %s",
            raw, suffix, "V{}.{}.{}".format(*decoded), "V{}.{}.{}".format(*version),
        )

    return SpecMetadata(
        release=tuple(sorted(releases)),
        series=series,
        specification=specification,
        version=version,
    )
