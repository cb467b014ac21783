"""Local corpus ingestion and exact document-level counting.

A document "contains" a pattern if the pattern occurs at least once in its
body text (document frequency, never term frequency). Phrase containment is
strict adjacency: consecutive positions, no slop, no stemming, no stop words.

The index keeps two structures per token: a presence list (sorted document
ordinals) and per-document position lists. Both are frozen to ``array('q')``
after the build so the posting kernels can run over raw int64 buffers; the
index is immutable afterwards and safe for any number of concurrent readers.
"""

import json
from array import array
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from meaningbound import _kernels
from meaningbound.errors import CorpusFormatError, DuplicateDocIdError
from meaningbound.query import Query, TermPattern
from meaningbound.text import normalize

_EMPTY = array("q")


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str


class CorpusIndex:
    """Immutable presence + positional index over a document collection."""

    def __init__(self) -> None:
        self._doc_ids: list[str] = []
        self._presence: dict[str, array] = {}
        self._positions: dict[str, dict[int, array]] = {}
        self._total_tokens = 0

    @classmethod
    def build(cls, documents: Iterable[Document]) -> "CorpusIndex":
        """Index a document stream. Doc ids must be unique."""
        index = cls()
        seen: set[str] = set()
        presence: dict[str, list[int]] = {}
        positions: dict[str, dict[int, list[int]]] = {}
        for doc in documents:
            if doc.doc_id in seen:
                raise DuplicateDocIdError(f"duplicate doc id: {doc.doc_id!r}")
            seen.add(doc.doc_id)
            ordinal = len(index._doc_ids)
            index._doc_ids.append(doc.doc_id)
            tokens = normalize(doc.text)
            index._total_tokens += len(tokens)
            for pos, tok in enumerate(tokens):
                plist = presence.setdefault(tok, [])
                if not plist or plist[-1] != ordinal:
                    plist.append(ordinal)
                positions.setdefault(tok, {}).setdefault(ordinal, []).append(pos)
        index._presence = {tok: array("q", lst) for tok, lst in presence.items()}
        index._positions = {
            tok: {ordinal: array("q", lst) for ordinal, lst in per_doc.items()}
            for tok, per_doc in positions.items()
        }
        return index

    @property
    def total_docs(self) -> int:
        return len(self._doc_ids)

    @property
    def vocabulary_size(self) -> int:
        return len(self._presence)

    @property
    def total_tokens(self) -> int:
        return self._total_tokens

    def count(self, query: Query) -> int:
        """Number of documents satisfying the query."""
        kernel = _kernels.active()
        docs_p = self._pattern_docs(query.pattern, kernel)
        if query.other is None:
            return len(docs_p)
        docs_q = self._pattern_docs(query.other, kernel)
        if query.negated:
            return kernel.difference_count(docs_p, docs_q)
        return kernel.intersect_count(docs_p, docs_q)

    def _pattern_docs(self, pattern: TermPattern, kernel) -> array:
        """Sorted ordinals of the documents containing the pattern.

        Word patterns return the shared presence list; callers never mutate.
        """
        if not pattern.is_phrase:
            return self._presence.get(pattern.tokens[0], _EMPTY)
        lists = []
        for tok in pattern.tokens:
            plist = self._presence.get(tok)
            if plist is None:
                return _EMPTY
            lists.append(plist)
        # Fold the presence intersection smallest-first, then verify adjacency
        # per surviving document.
        lists.sort(key=len)
        candidates = lists[0]
        for other in lists[1:]:
            candidates = kernel.intersect(candidates, other)
            if not len(candidates):
                return _EMPTY
        matches = array("q")
        tokens = pattern.tokens
        first_positions = self._positions[tokens[0]]
        for ordinal in candidates:
            starts = first_positions[ordinal]
            for offset, tok in enumerate(tokens[1:], start=1):
                starts = kernel.shifted_intersect(
                    starts, self._positions[tok][ordinal], offset
                )
                if not len(starts):
                    break
            else:
                matches.append(ordinal)
        return matches


def read_jsonl_corpus(path: str | Path) -> Iterator[Document]:
    """Documents from newline-delimited JSON records with `id` and `text`."""
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path}:{lineno}: bad JSON: {exc}") from exc
            if (
                not isinstance(record, dict)
                or not isinstance(record.get("id"), str)
                or not isinstance(record.get("text"), str)
            ):
                raise CorpusFormatError(
                    f"{path}:{lineno}: record needs string fields 'id' and 'text'"
                )
            yield Document(record["id"], record["text"])


def read_text_dir_corpus(path: str | Path) -> Iterator[Document]:
    """Documents from a directory tree of text files; doc id = relative path."""
    root = Path(path)
    if not root.is_dir():
        raise CorpusFormatError(f"not a directory: {root}")
    for file in sorted(p for p in root.rglob("*") if p.is_file()):
        try:
            text = file.read_text("utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusFormatError(f"{file}: not UTF-8 text: {exc}") from exc
        yield Document(file.relative_to(root).as_posix(), text)


def load_corpus(path: str | Path, fmt: str = "auto") -> CorpusIndex:
    """Build an index from a corpus path; `fmt` is 'jsonl', 'dir' or 'auto'."""
    path = Path(path)
    if fmt == "auto":
        fmt = "dir" if path.is_dir() else "jsonl"
    if fmt == "jsonl":
        if not path.is_file():
            raise CorpusFormatError(f"corpus file not found: {path}")
        return CorpusIndex.build(read_jsonl_corpus(path))
    if fmt == "dir":
        return CorpusIndex.build(read_text_dir_corpus(path))
    raise CorpusFormatError(f"unknown corpus format: {fmt!r}")
