"""Document loading and saving.

Two input formats are supported:

* the canonical interchange format -- a versioned, deterministic JSON
  schema (``specrag.document/v1``) that round-trips byte-identically;
* a Markdown subset -- ATX headings, blank-line-separated paragraphs, and
  fenced media blocks whose info string starts with ``media:``::

      ```media:table id=tab-1
      caption: Latency bounds per interface
      Interface | Bound
      N6 | 20 ms
      ```

      ```media:image id=img-7
      caption: System architecture
      ref: figures/arch.png
      ```

Markdown documents take their doc_name from the file stem and their
metadata from parsing that stem as a specification identifier.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .docmodel import (
    IMAGE,
    PARAGRAPH,
    TABLE,
    Block,
    Document,
    Section,
    SpecMetadata,
    parse_spec_identifier,
)
from .errors import MalformedIdentifier, ParseError

DOC_SCHEMA = "specrag.document/v1"

CANONICAL = "canonical"
MARKDOWN = "markdown"

_HEADING_RE = re.compile(r"^(#{1,6})\s+(.*\S)\s*$")
_FENCE_OPEN_RE = re.compile(r"^```\s*media:(table|image)(?:\s+id=(\S+))?\s*$")


def load_document(path: str | Path, format: str | None = None) -> Document:
    """Load a document, inferring the format from the suffix when omitted.

    ``.json`` maps to the canonical format, ``.md``/``.markdown`` to the
    Markdown subset.
    """
    path = Path(path)
    if format is None:
        format = CANONICAL if path.suffix == ".json" else MARKDOWN
    text = path.read_text("utf-8")
    if format == CANONICAL:
        return _parse_canonical(text, str(path))
    if format == MARKDOWN:
        return _parse_markdown(text, path.stem, str(path))
    raise ValueError(f"unknown document format {format!r}")


def save_document(doc: Document, path: str | Path) -> None:
    """Write the canonical format. ``load_document(save_document(d)) == d``."""
    Path(path).write_text(dumps_document(doc), "utf-8")


def dumps_document(doc: Document) -> str:
    payload = {
        "schema": DOC_SCHEMA,
        "doc_name": doc.doc_name,
        "metadata": _metadata_to_json(doc.metadata),
        "root": _section_to_json(doc.root),
    }
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def loads_document(text: str, path: str = "<string>") -> Document:
    return _parse_canonical(text, path)


# --- canonical JSON -------------------------------------------------------

def _metadata_to_json(md: SpecMetadata) -> dict:
    return {
        "release": list(md.release),
        "series": md.series,
        "specification": md.specification,
        "version": list(md.version) if md.version is not None else None,
    }


def _metadata_from_json(obj: dict) -> SpecMetadata:
    version = obj.get("version")
    return SpecMetadata(
        release=tuple(obj.get("release", ())),
        series=obj.get("series", ""),
        specification=obj.get("specification", ""),
        version=tuple(version) if version is not None else None,
    )


def _section_to_json(sec: Section) -> dict:
    return {
        "heading": sec.heading,
        "level": sec.level,
        "blocks": [_block_to_json(b) for b in sec.blocks],
        "children": [_section_to_json(c) for c in sec.children],
    }


def _block_to_json(block: Block) -> dict:
    out: dict = {"kind": block.kind}
    if block.kind == PARAGRAPH:
        out["text"] = block.text
        return out
    out["media_id"] = block.media_id
    out["caption"] = block.caption
    if block.kind == TABLE:
        out["cells"] = block.table_cells
    else:
        out["ref"] = block.image_bytes_ref
    return out


def _parse_canonical(text: str, path: str) -> Document:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from exc
    if not isinstance(payload, dict):
        raise ParseError("document payload must be a JSON object", path=path)
    schema = payload.get("schema")
    if schema != DOC_SCHEMA:
        raise ParseError(f"unsupported document schema {schema!r}", path=path)
    try:
        return Document(
            doc_name=payload["doc_name"],
            metadata=_metadata_from_json(payload.get("metadata", {})),
            root=_section_from_json(payload["root"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed document: {exc}", path=path) from exc


def _section_from_json(obj: dict) -> Section:
    return Section(
        heading=obj.get("heading", ""),
        level=obj["level"],
        blocks=[_block_from_json(b) for b in obj.get("blocks", [])],
        children=[_section_from_json(c) for c in obj.get("children", [])],
    )


def _block_from_json(obj: dict) -> Block:
    kind = obj.get("kind")
    if kind == PARAGRAPH:
        return Block(kind=PARAGRAPH, text=obj.get("text", ""))
    if kind == TABLE:
        return Block(
            kind=TABLE,
            media_id=obj.get("media_id"),
            caption=obj.get("caption", ""),
            table_cells=obj.get("cells"),
        )
    if kind == IMAGE:
        return Block(
            kind=IMAGE,
            media_id=obj.get("media_id"),
            caption=obj.get("caption", ""),
            image_bytes_ref=obj.get("ref"),
        )
    raise ValueError(f"unknown block kind {kind!r}")


# --- markdown subset ------------------------------------------------------

def _parse_markdown(text: str, doc_name: str, path: str) -> Document:
    try:
        metadata = parse_spec_identifier(doc_name)
    except MalformedIdentifier:
        metadata = SpecMetadata()

    root = Section(heading="", level=0)
    stack = [root]  # innermost open section last
    paragraph_lines: list[str] = []
    media_seq = {TABLE: 0, IMAGE: 0}

    def flush_paragraph() -> None:
        if paragraph_lines:
            stack[-1].blocks.append(Block(kind=PARAGRAPH, text=" ".join(paragraph_lines)))
            paragraph_lines.clear()

    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i]
        heading = _HEADING_RE.match(line)
        fence = _FENCE_OPEN_RE.match(line.strip())
        if heading:
            flush_paragraph()
            level = len(heading.group(1))
            while stack[-1].level >= level:
                stack.pop()
            section = Section(heading=heading.group(2), level=level)
            stack[-1].children.append(section)
            stack.append(section)
        elif fence:
            flush_paragraph()
            kind = fence.group(1)
            media_seq[kind] += 1
            media_id = fence.group(2) or f"{kind[:3]}-{media_seq[kind]:03d}"
            body: list[str] = []
            i += 1
            while i < len(lines) and lines[i].strip() != "```":
                body.append(lines[i])
                i += 1
            if i >= len(lines):
                raise ParseError("unterminated media fence", path=path, line=len(lines))
            stack[-1].blocks.append(_media_block(kind, media_id, body, path, i))
        elif line.startswith("```"):
            raise ParseError(
                "only media: fenced blocks are supported", path=path, line=i + 1
            )
        elif line.strip():
            paragraph_lines.append(line.strip())
        else:
            flush_paragraph()
        i += 1
    flush_paragraph()

    return Document(doc_name=doc_name, metadata=metadata, root=root)


def _media_block(kind: str, media_id: str, body: list[str], path: str, line: int) -> Block:
    caption = ""
    ref = None
    rows: list[list[str]] = []
    for raw in body:
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("caption:"):
            caption = stripped[len("caption:"):].strip()
        elif stripped.startswith("ref:"):
            ref = stripped[len("ref:"):].strip()
        elif kind == TABLE:
            rows.append([cell.strip() for cell in stripped.split("|")])
        else:
            raise ParseError(
                f"unexpected line in image block: {stripped!r}", path=path, line=line
            )
    if kind == TABLE:
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ParseError("table rows have unequal cell counts", path=path, line=line)
        return Block(kind=TABLE, media_id=media_id, caption=caption, table_cells=rows)
    return Block(kind=IMAGE, media_id=media_id, caption=caption, image_bytes_ref=ref)
