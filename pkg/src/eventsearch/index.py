"""Inverted index over one monthly partition: postings, tf, and smoothed idf.

A built index is immutable and safe for unlimited concurrent readers.
"""

from __future__ import annotations

import math
import re
from datetime import date
from pathlib import Path
from typing import IO, Iterable, Union

from .corpus import ItemDocument, MonthKey, MonthlyCorpus, format_month, tokenize
from .errors import DuplicateDocumentId, FormatError, UnknownDocument

PathOrFile = Union[str, Path, IO[str]]

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)
# doc_ids travel through space- and comma-separated fields on disk
_SERIALIZABLE_ID = re.compile(r"[^\s:,]+")


class InvertedIndex:
    """term -> postings, document frequencies, and the document store."""

    def __init__(
        self,
        month_key: MonthKey,
        postings: dict[str, list[tuple[str, int]]],
        doc_store: dict[str, ItemDocument],
    ):
        self.month_key = month_key
        self.postings = postings
        self.doc_store = doc_store
        self.doc_freq = {term: len(plist) for term, plist in postings.items()}

    @property
    def doc_count(self) -> int:
        return len(self.doc_store)

    @property
    def avg_doc_len(self) -> float:
        """Mean token count over all documents; 0.0 for an empty index."""
        if not self.doc_store:
            return 0.0
        return sum(len(d.tokens) for d in self.doc_store.values()) / len(self.doc_store)

    def tf(self, doc_id: str, term: str) -> int:
        """Raw occurrence count of term in the document's token list."""
        if doc_id not in self.doc_store:
            raise UnknownDocument(doc_id)
        return self.doc_store[doc_id].tokens.count(term)

    def idf(self, term: str) -> float:
        """ln((N + 1) / (df + 1)) + 1; smoothed, strictly positive."""
        df = self.doc_freq.get(term, 0)
        return math.log((self.doc_count + 1) / (df + 1)) + 1.0

    def candidate_docs(self, terms: Iterable[str]) -> set[str]:
        """Union of posting doc_ids over the given terms (OR semantics)."""
        found: set[str] = set()
        for term in terms:
            found.update(doc_id for doc_id, _ in self.postings.get(term, ()))
        return found


def build_index(corpus: MonthlyCorpus) -> InvertedIndex:
    """Index every (term, document) occurrence of a monthly corpus."""
    postings: dict[str, list[tuple[str, int]]] = {}
    doc_store: dict[str, ItemDocument] = {}
    for doc in corpus.documents:
        if doc.doc_id in doc_store:
            raise DuplicateDocumentId(f"doc_id {doc.doc_id!r} appears twice in corpus")
        doc_store[doc.doc_id] = doc
        counts: dict[str, int] = {}
        for token in doc.tokens:
            counts[token] = counts.get(token, 0) + 1
        for term, count in counts.items():
            postings.setdefault(term, []).append((doc.doc_id, count))
    for plist in postings.values():
        plist.sort(key=lambda entry: entry[0])
    return InvertedIndex(corpus.month_key, postings, doc_store)


def _open(dest: PathOrFile, mode: str):
    if isinstance(dest, (str, Path)):
        return open(dest, mode, encoding="utf-8", newline="\n"), True
    return dest, False


def save_index(index: InvertedIndex, dest: PathOrFile) -> None:
    """Write the index as a single portable UTF-8 file.

    Line 1 is "INDEXv1 <year>-<month> N"; then one "D" line per document
    with its tokens (prefixed by how many of them came from the category),
    then one "T" line per term with df and ascending doc_id:tf postings.
    doc_ids that contain whitespace, ':' or ',' cannot be represented and
    raise FormatError.
    """
    for doc_id in index.doc_store:
        if not _SERIALIZABLE_ID.fullmatch(doc_id):
            raise FormatError(f"doc_id {doc_id!r} cannot be serialized in index format")
    handle, owned = _open(dest, "w")
    try:
        handle.write(f"INDEXv1 {format_month(index.month_key)} {index.doc_count}\n")
        for doc in index.doc_store.values():
            category_tokens = len(tokenize(doc.category, ""))
            token_list = " ".join(doc.tokens)
            sep = " " if token_list else ""
            handle.write(
                f"D {doc.doc_id} {doc.sold_date.isoformat()} {category_tokens}{sep}{token_list}\n"
            )
        for term in sorted(index.postings):
            plist = index.postings[term]
            pairs = ",".join(f"{doc_id}:{count}" for doc_id, count in plist)
            handle.write(f"T {term} {len(plist)} {pairs}\n")
    finally:
        if owned:
            handle.close()


def _parse_doc_line(line: str, lineno: int, month_key: MonthKey) -> ItemDocument:
    fields = line.split(" ")
    if len(fields) < 4:
        raise FormatError(f"document line needs at least 4 fields, got {len(fields)}", line=lineno)
    _, doc_id, date_text, cat_count_text = fields[:4]
    tokens = fields[4:]
    try:
        sold = date.fromisoformat(date_text)
    except ValueError:
        raise FormatError(f"invalid date {date_text!r}", line=lineno) from None
    if (sold.year, sold.month) != month_key:
        raise FormatError(
            f"document dated {date_text} outside partition {format_month(month_key)}", line=lineno
        )
    try:
        cat_count = int(cat_count_text)
    except ValueError:
        raise FormatError(f"invalid category token count {cat_count_text!r}", line=lineno) from None
    if not 0 <= cat_count <= len(tokens):
        raise FormatError(f"category token count {cat_count} out of range", line=lineno)
    for token in tokens:
        if not _TOKEN.fullmatch(token) or token != token.lower():
            raise FormatError(f"invalid token {token!r}", line=lineno)
    # raw category/title text is not stored; rebuild normalized forms from tokens
    category = " ".join(tokens[:cat_count])
    title = " ".join(tokens[cat_count:])
    return ItemDocument(doc_id, sold, category, title, tuple(tokens))


def load_index(source: PathOrFile) -> InvertedIndex:
    """Read an index file back, validating structure and cross-references."""
    handle, owned = _open(source, "r")
    try:
        lines = handle.read().split("\n")
    finally:
        if owned:
            handle.close()
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("empty index file", line=1)

    header = lines[0].split(" ")
    if len(header) != 3 or header[0] != "INDEXv1":
        raise FormatError(f"expected 'INDEXv1 <year>-<month> N', got {lines[0]!r}", line=1)
    match = re.fullmatch(r"(\d{4})-(\d{2})", header[1])
    if match is None:
        raise FormatError(f"invalid month {header[1]!r}", line=1)
    month_key = (int(match.group(1)), int(match.group(2)))
    if not 1 <= month_key[1] <= 12:
        raise FormatError(f"invalid month {header[1]!r}", line=1)
    try:
        doc_count = int(header[2])
    except ValueError:
        raise FormatError(f"invalid document count {header[2]!r}", line=1) from None
    if doc_count < 0:
        raise FormatError(f"invalid document count {doc_count}", line=1)

    doc_store: dict[str, ItemDocument] = {}
    postings: dict[str, list[tuple[str, int]]] = {}
    lineno = 1
    rest = lines[1:]
    pos = 0
    while pos < len(rest) and rest[pos].startswith("D "):
        lineno += 1
        doc = _parse_doc_line(rest[pos], lineno, month_key)
        if doc.doc_id in doc_store:
            raise FormatError(f"duplicate doc_id {doc.doc_id!r}", line=lineno)
        doc_store[doc.doc_id] = doc
        pos += 1
    if len(doc_store) != doc_count:
        raise FormatError(
            f"header promises {doc_count} documents, found {len(doc_store)}", line=lineno + 1
        )
    while pos < len(rest):
        lineno += 1
        line = rest[pos]
        pos += 1
        fields = line.split(" ")
        if len(fields) != 4 or fields[0] != "T":
            raise FormatError(f"expected 'T <term> <df> <postings>', got {line!r}", line=lineno)
        _, term, df_text, pairs_text = fields
        if term in postings:
            raise FormatError(f"duplicate term {term!r}", line=lineno)
        try:
            df = int(df_text)
        except ValueError:
            raise FormatError(f"invalid df {df_text!r}", line=lineno) from None
        plist: list[tuple[str, int]] = []
        for pair in pairs_text.split(","):
            doc_id, sep, count_text = pair.partition(":")
            if not sep or doc_id not in doc_store:
                raise FormatError(f"bad posting {pair!r}", line=lineno)
            try:
                count = int(count_text)
            except ValueError:
                raise FormatError(f"bad posting tf {pair!r}", line=lineno) from None
            if count < 1:
                raise FormatError(f"bad posting tf {pair!r}", line=lineno)
            if plist and doc_id <= plist[-1][0]:
                raise FormatError(f"postings not ascending at {pair!r}", line=lineno)
            plist.append((doc_id, count))
        if df != len(plist):
            raise FormatError(f"df {df} disagrees with {len(plist)} postings", line=lineno)
        postings[term] = plist
    return InvertedIndex(month_key, postings, doc_store)
