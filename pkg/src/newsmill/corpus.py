"""Feed ingestion and tokenization.

Turns RSS 2.0 / JSONL feed content into validated, deduplicated
:class:`Document` records and segments them into word tokens.  Documents
are the unit everything downstream (scanning, keyword extraction,
clustering) operates on.
"""

from __future__ import annotations

import hashlib
import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timezone
from email.utils import parsedate_to_datetime
from typing import Iterable

# Separator between title and body in the scanned text.  One character so
# spans on either side stay aligned with the original strings.
TITLE_BODY_SEP = "\n"

# Unicode word: letters and digits; underscore excluded.  Hyphens and
# apostrophes are not word characters, so "New York-based" yields three
# tokens and "l'eglise" splits the clitic off.
_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


class FeedParseError(ValueError):
    """Malformed feed container; carries the byte offset of the failure."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


@dataclass(frozen=True)
class Document:
    doc_id: str
    language: str
    source: str
    url: str
    title: str
    body: str
    published_at: datetime

    @property
    def date(self) -> str:
        return self.published_at.date().isoformat()

    def to_record(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "language": self.language,
            "source": self.source,
            "url": self.url,
            "title": self.title,
            "body": self.body,
            "published_at": self.published_at.isoformat(),
        }

    @staticmethod
    def from_record(rec: dict) -> "Document":
        return Document(
            doc_id=rec["doc_id"],
            language=rec["language"],
            source=rec["source"],
            url=rec["url"],
            title=rec["title"],
            body=rec.get("body", ""),
            published_at=_parse_timestamp(rec["published_at"]),
        )


@dataclass(frozen=True)
class Token:
    surface: str
    start: int
    end: int


@dataclass
class TokenizedDocument:
    doc: Document
    text: str                 # title + TITLE_BODY_SEP + body
    tokens: list[Token]
    title_end: int            # boundary offset: len(title)

    @property
    def token_count(self) -> int:
        return len(self.tokens)

    def lower_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for t in self.tokens:
            k = t.surface.lower()
            counts[k] = counts.get(k, 0) + 1
        return counts


@dataclass
class ParsedFeed:
    documents: list[Document]
    skipped: list[str] = field(default_factory=list)


def derive_doc_id(source: str, url: str, date: str) -> str:
    """Deterministic id from the wire dedup key (source, url, date)."""
    digest = hashlib.sha1(f"{source}\n{url}\n{date}".encode("utf-8")).hexdigest()
    return digest[:16]


def _parse_timestamp(value: str) -> datetime:
    dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def parse_feed(data: bytes, fmt: str) -> ParsedFeed:
    """Parse raw feed bytes into documents.

    Items missing a title or language are skipped and reported in
    ``ParsedFeed.skipped``.  Re-sent wires collapse onto one document via
    the (source, url, date) dedup key, which also yields the doc_id.
    """
    if fmt == "rss":
        return _parse_rss(data)
    if fmt == "jsonl":
        return _parse_jsonl(data)
    raise ValueError(f"unknown feed format: {fmt!r} (expected 'rss' or 'jsonl')")


def _byte_offset_of_position(data: bytes, line: int, column: int) -> int:
    lines = data.split(b"\n")
    return sum(len(l) + 1 for l in lines[: line - 1]) + column


def _parse_rss(data: bytes) -> ParsedFeed:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FeedParseError("feed is not valid UTF-8", exc.start) from exc
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line, column = exc.position
        raise FeedParseError(f"malformed XML: {exc.msg}", _byte_offset_of_position(data, line, column)) from exc

    channel = root.find("channel")
    if channel is None:
        raise FeedParseError("RSS feed has no <channel> element", 0)
    channel_lang = _element_text(channel, "language")
    channel_source = _element_text(channel, "title") or "unknown"

    docs: list[Document] = []
    skipped: list[str] = []
    seen: set[str] = set()
    for i, item in enumerate(channel.findall("item")):
        title = _element_text(item, "title")
        lang = _element_text(item, "language") or _element_text(
            item, "{http://purl.org/dc/elements/1.1/}language"
        ) or channel_lang
        if not title:
            skipped.append(f"item {i}: missing title")
            continue
        if not lang:
            skipped.append(f"item {i}: missing language")
            continue
        url = _element_text(item, "link") or ""
        body = _element_text(item, "description") or ""
        source = _element_text(item, "source") or channel_source
        pub = _element_text(item, "pubDate")
        if pub:
            try:
                published = parsedate_to_datetime(pub)
            except (TypeError, ValueError):
                skipped.append(f"item {i}: bad pubDate {pub!r}")
                continue
            if published.tzinfo is None:
                published = published.replace(tzinfo=timezone.utc)
            published = published.astimezone(timezone.utc)
        else:
            skipped.append(f"item {i}: missing pubDate")
            continue
        doc = Document(
            doc_id=derive_doc_id(source, url, published.date().isoformat()),
            language=lang.strip(),
            source=source,
            url=url,
            title=title.strip(),
            body=body.strip(),
            published_at=published,
        )
        if doc.doc_id in seen:
            skipped.append(f"item {i}: duplicate of {doc.doc_id}")
            continue
        seen.add(doc.doc_id)
        docs.append(doc)
    return ParsedFeed(docs, skipped)


def _element_text(parent: ET.Element, tag: str) -> str | None:
    el = parent.find(tag)
    if el is None or el.text is None:
        return None
    return el.text.strip()


def _parse_jsonl(data: bytes) -> ParsedFeed:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FeedParseError("feed is not valid UTF-8", exc.start) from exc

    docs: list[Document] = []
    skipped: list[str] = []
    seen: set[str] = set()
    offset = 0
    for i, line in enumerate(text.split("\n")):
        line_offset = offset
        offset += len(line.encode("utf-8")) + 1
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FeedParseError(f"malformed JSON on line {i + 1}: {exc.msg}", line_offset + exc.pos) from exc
        title = (rec.get("title") or "").strip()
        lang = (rec.get("language") or "").strip()
        if not title:
            skipped.append(f"line {i + 1}: missing title")
            continue
        if not lang:
            skipped.append(f"line {i + 1}: missing language")
            continue
        if not rec.get("published_at"):
            skipped.append(f"line {i + 1}: missing published_at")
            continue
        try:
            published = _parse_timestamp(rec["published_at"])
        except ValueError:
            skipped.append(f"line {i + 1}: bad published_at {rec['published_at']!r}")
            continue
        source = (rec.get("source") or "unknown").strip()
        url = (rec.get("url") or "").strip()
        doc = Document(
            doc_id=derive_doc_id(source, url, published.date().isoformat()),
            language=lang,
            source=source,
            url=url,
            title=title,
            body=(rec.get("body") or "").strip(),
            published_at=published,
        )
        if doc.doc_id in seen:
            skipped.append(f"line {i + 1}: duplicate of {doc.doc_id}")
            continue
        seen.add(doc.doc_id)
        docs.append(doc)
    return ParsedFeed(docs, skipped)


def tokenize(doc: Document) -> TokenizedDocument:
    """Unicode word segmentation over title + body.

    Spans index into the concatenated text (title, one separator char,
    body); the title/body boundary offset is retained so the UI can
    highlight correctly.  Title and body tokens are counted equally.
    """
    text = doc.title + TITLE_BODY_SEP + doc.body if doc.body else doc.title
    tokens = [Token(m.group(), m.start(), m.end()) for m in _WORD_RE.finditer(text)]
    return TokenizedDocument(doc=doc, text=text, tokens=tokens, title_end=len(doc.title))


def read_jsonl(path) -> list[Document]:
    with open(path, "r", encoding="utf-8") as fh:
        return [Document.from_record(json.loads(line)) for line in fh if line.strip()]


def write_jsonl(path, docs: Iterable[Document]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps(doc.to_record(), ensure_ascii=False, sort_keys=True) + "\n")
