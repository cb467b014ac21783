"""Query algebra for document-level count questions.

Exactly three shapes exist: a single pattern, a conjunction of two patterns,
and a conjunction with a negated second pattern. A pattern is either one word
or an exact phrase (two or more adjacent words).

Every query has one canonical string form, shared by fixtures, cache keys,
web requests and the CLI::

    fish                  word
    "pet fish"            phrase
    "pet fish" guppy      conjunction
    pet -world            conjunction with negation

:func:`parse_query` accepts raw user text (any case, any punctuation) and
normalizes it; :func:`canonical_query_string` is its exact inverse on the
canonical form.
"""

from dataclasses import dataclass

from meaningbound.errors import QuerySyntaxError
from meaningbound.text import normalize


@dataclass(frozen=True)
class TermPattern:
    """One word or an exact phrase of adjacent words, as normalized tokens."""

    tokens: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.tokens:
            raise QuerySyntaxError("a pattern needs at least one token")
        for tok in self.tokens:
            if not tok or normalize(tok) != [tok]:
                raise QuerySyntaxError(f"not a normalized token: {tok!r}")

    @property
    def is_phrase(self) -> bool:
        return len(self.tokens) > 1

    def canonical(self) -> str:
        if self.is_phrase:
            return '"' + " ".join(self.tokens) + '"'
        return self.tokens[0]

    @classmethod
    def parse(cls, text: str) -> "TermPattern":
        """Normalize raw text into a pattern; multiple tokens form a phrase."""
        tokens = normalize(text)
        if not tokens:
            raise QuerySyntaxError(f"no tokens in pattern text: {text!r}")
        return cls(tuple(tokens))

    def __str__(self) -> str:
        return self.canonical()


@dataclass(frozen=True)
class Query:
    """A count question: ``Query(p)``, ``Query(p, q)`` or ``Query(p, q, negated=True)``."""

    pattern: TermPattern
    other: TermPattern | None = None
    negated: bool = False

    def __post_init__(self) -> None:
        if self.negated and self.other is None:
            raise QuerySyntaxError("negation needs a second pattern")

    def __str__(self) -> str:
        return canonical_query_string(self)


def canonical_query_string(query: Query) -> str:
    """Deterministic serialization used for fixtures, caches and requests."""
    head = query.pattern.canonical()
    if query.other is None:
        return head
    tail = query.other.canonical()
    if query.negated:
        return f"{head} -{tail}"
    return f"{head} {tail}"


def _split_chunks(text: str) -> list[tuple[bool, bool, str]]:
    """Split query text into (negated, quoted, raw) chunks, honoring quotes."""
    chunks: list[tuple[bool, bool, str]] = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        negated = False
        if text[i] == "-":
            negated = True
            i += 1
            if i >= n or text[i].isspace():
                raise QuerySyntaxError("dangling '-' with no term after it")
        if i < n and text[i] == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise QuerySyntaxError(f"unbalanced quote in query: {text!r}")
            chunks.append((negated, True, text[i + 1 : end]))
            i = end + 1
        else:
            end = i
            while end < n and not text[end].isspace():
                end += 1
            raw = text[i:end]
            if '"' in raw:
                raise QuerySyntaxError(f"quote in the middle of a term: {raw!r}")
            chunks.append((negated, False, raw))
            i = end
    return chunks


def parse_query(text: str) -> Query:
    """Parse canonical (or raw) query syntax into a :class:`Query`.

    Quoted chunks are phrases. Unquoted chunks are words; separator
    punctuation inside an unquoted chunk splits it into several word terms,
    so ``pet-fish`` reads exactly like ``pet fish`` (a conjunction of two
    words), never like the phrase ``"pet fish"``.
    """
    terms: list[tuple[bool, TermPattern]] = []
    for negated, quoted, raw in _split_chunks(text):
        tokens = normalize(raw)
        if not tokens:
            raise QuerySyntaxError(f"term has no tokens: {raw!r}")
        if quoted or len(tokens) == 1:
            terms.append((negated, TermPattern(tuple(tokens))))
        elif negated:
            raise QuerySyntaxError(
                f"negated multi-word term must be quoted: -{raw!r}"
            )
        else:
            terms.extend((False, TermPattern((tok,))) for tok in tokens)

    if not terms:
        raise QuerySyntaxError("empty query")
    if terms[0][0]:
        raise QuerySyntaxError("the first term cannot be negated")
    if len(terms) == 1:
        return Query(terms[0][1])
    if len(terms) == 2:
        return Query(terms[0][1], terms[1][1], negated=terms[1][0])
    raise QuerySyntaxError(f"a query takes at most two terms: {text!r}")
