"""Corpus ingestion and token preprocessing.

Three ingestion formats (JSONL, directory of .txt files, XML with repeated
document records) all produce ``RawDocument`` lists; ``preprocess`` turns a
raw document into an ordered token list via a fixed stage pipeline:

    whitespace split -> non-ASCII token removal (optional) -> lowercase
    -> punctuation strip -> integer-to-words (optional) -> stopword removal
    -> suffix normalizer -> stopword re-check on normalized forms

The pipeline is deterministic, order preserving, and idempotent: running it
on its own (space-joined) output returns the same tokens.
"""
from __future__ import annotations

import json
import string
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

__all__ = [
    "RawDocument",
    "Document",
    "PipelineConfig",
    "NORMALIZERS",
    "default_stopwords",
    "load_stopwords",
    "int_to_words",
    "normalize_suffix",
    "preprocess",
    "preprocess_corpus",
    "ingest_jsonl",
    "ingest_txt_dir",
    "ingest_nysk_xml",
]

NORMALIZERS = ("none", "simple_suffix")

# int_to_words handles at most this many digits; longer digit strings pass
# through unchanged (they survive reruns unchanged, so idempotence holds).
_MAX_NUMERAL_DIGITS = 15


@dataclass(frozen=True)
class RawDocument:
    doc_id: str
    text: str


@dataclass(frozen=True)
class Document:
    doc_id: str
    tokens: tuple[str, ...]


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read one stopword per line; '#' lines and blanks are ignored."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip().lower()
            if word and not word.startswith("#"):
                words.add(word)
    return frozenset(words)


def default_stopwords() -> frozenset[str]:
    """The English stopword list shipped with the package."""
    text = resources.files("termscore.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(
        w.strip().lower()
        for w in text.splitlines()
        if w.strip() and not w.startswith("#")
    )


@dataclass
class PipelineConfig:
    """Preprocessing switches.

    Stopword entries are normalized at construction (lowercased, punctuation
    stripped) so membership tests see the same form tokens have at the
    stopword stage.
    """

    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    strip_non_ascii: bool = True
    number_to_words: bool = True
    normalizer: str = "simple_suffix"
    punctuation: str = string.punctuation

    def __post_init__(self) -> None:
        if self.normalizer not in NORMALIZERS:
            raise ValueError(
                f"unknown normalizer {self.normalizer!r}; expected one of {NORMALIZERS}"
            )
        table = str.maketrans("", "", self.punctuation)
        self._strip_table = table
        self.stopwords = frozenset(
            s for s in (w.lower().translate(table) for w in self.stopwords) if s
        )


_ONES = (
    "zero one two three four five six seven eight nine ten eleven twelve "
    "thirteen fourteen fifteen sixteen seventeen eighteen nineteen"
).split()
_TENS = ("", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety")
_SCALES = ("", "thousand", "million", "billion", "trillion")


def int_to_words(value: int) -> list[str]:
    """English word tokens for a nonnegative integer, e.g. 21 -> [twenty, one].

    Multi-word numerals come back as separate lowercase alphabetic tokens so
    they can flow through the rest of the pipeline like ordinary words.
    """
    if value < 0:
        raise ValueError(f"int_to_words requires a nonnegative integer, got {value}")
    if value == 0:
        return ["zero"]

    def under_thousand(n: int) -> list[str]:
        words: list[str] = []
        if n >= 100:
            words += [_ONES[n // 100], "hundred"]
            n %= 100
        if n >= 20:
            words.append(_TENS[n // 10])
            n %= 10
        if n:
            words.append(_ONES[n])
        return words

    groups: list[int] = []
    while value:
        groups.append(value % 1000)
        value //= 1000
    if len(groups) > len(_SCALES):
        raise ValueError("integer too large to spell out")
    words: list[str] = []
    for idx in range(len(groups) - 1, -1, -1):
        if groups[idx] == 0:
            continue
        words += under_thousand(groups[idx])
        if idx:
            words.append(_SCALES[idx])
    return words


def normalize_suffix(token: str) -> str:
    """Small idempotent plural stripper; tokens of length <= 3 pass through."""
    if len(token) <= 3:
        return token
    if token.endswith("sses"):
        return token[:-2]
    if token.endswith("ies"):
        return token[:-3] + "y"
    if token.endswith(("ss", "us", "is")):
        return token
    if token.endswith("s"):
        return token[:-1]
    return token


def preprocess(raw: RawDocument, config: PipelineConfig) -> Document:
    """Apply the full pipeline to one raw document."""
    tokens = raw.text.split()
    if config.strip_non_ascii:
        tokens = [t for t in tokens if t.isascii()]
    tokens = [t.lower() for t in tokens]
    tokens = [t.translate(config._strip_table) for t in tokens]
    tokens = [t for t in tokens if t]
    if config.number_to_words:
        expanded: list[str] = []
        for t in tokens:
            if t.isdigit() and t.isascii() and len(t) <= _MAX_NUMERAL_DIGITS:
                expanded += int_to_words(int(t))
            else:
                expanded.append(t)
        tokens = expanded
    tokens = [t for t in tokens if t not in config.stopwords]
    if config.normalizer == "simple_suffix":
        tokens = [normalize_suffix(t) for t in tokens]
        # A normalized form can land on a stopword ("downs" -> "down");
        # re-checking keeps the pipeline idempotent.
        tokens = [t for t in tokens if t not in config.stopwords]
    return Document(doc_id=raw.doc_id, tokens=tuple(t for t in tokens if t))


def preprocess_corpus(raws: Iterable[RawDocument], config: PipelineConfig) -> list[Document]:
    return [preprocess(raw, config) for raw in raws]


def ingest_jsonl(path: str | Path) -> list[RawDocument]:
    """One JSON object per line with 'id' and 'text' fields; blank lines skipped."""
    docs: list[RawDocument] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {lineno}: malformed JSON ({exc.msg})") from exc
            if not isinstance(record, dict) or "id" not in record or "text" not in record:
                raise ValueError(f"{path}: line {lineno}: expected an object with 'id' and 'text'")
            doc_id = str(record["id"])
            if doc_id in seen:
                raise ValueError(f"{path}: line {lineno}: duplicate document id {doc_id!r}")
            seen.add(doc_id)
            docs.append(RawDocument(doc_id=doc_id, text=str(record["text"])))
    return docs


def ingest_txt_dir(path: str | Path) -> list[RawDocument]:
    """One document per .txt file, id = filename stem, ordered by filename."""
    directory = Path(path)
    if not directory.is_dir():
        raise ValueError(f"{directory} is not a directory")
    docs = []
    for file in sorted(directory.glob("*.txt")):
        docs.append(RawDocument(doc_id=file.stem, text=file.read_text("utf-8")))
    return docs


def _byte_offset(path: Path, line: int, column: int) -> int:
    # expat positions are 1-based lines and 0-based columns
    data = path.read_bytes()
    lines = data.splitlines(keepends=True)
    return sum(len(chunk) for chunk in lines[: line - 1]) + column


def ingest_nysk_xml(path: str | Path) -> list[RawDocument]:
    """Repeated document records under the root, each holding a <text> element.

    Document ids are sequential indices ("0", "1", ...) in file order.
    """
    path = Path(path)
    docs: list[RawDocument] = []
    depth = 0
    try:
        for event, elem in ET.iterparse(path, events=("start", "end")):
            if event == "start":
                depth += 1
                continue
            depth -= 1
            if depth != 1:
                continue
            text_elem = elem.find("text")
            if text_elem is None:
                raise ValueError(
                    f"{path}: document record {len(docs)} has no <text> element"
                )
            docs.append(
                RawDocument(doc_id=str(len(docs)), text="".join(text_elem.itertext()))
            )
            elem.clear()
    except ET.ParseError as exc:
        line, column = exc.position
        offset = _byte_offset(path, line, column)
        raise ValueError(
            f"{path}: XML parse error at byte {offset} (line {line}, column {column})"
        ) from exc
    return docs
