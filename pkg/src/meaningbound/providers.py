"""Count sources behind one contract, plus the append-only count cache.

Three providers answer ``get_count(query) -> CountRecord``:

* :class:`LocalIndexProvider` wraps a :class:`~meaningbound.corpus.CorpusIndex`;
* :class:`FixtureProvider` replays a recorded fixture file and refuses to
  guess (a silently fabricated zero would manufacture a repulsive bound);
* :class:`WebProvider` queries a configurable hit-count endpoint with rate
  limiting, retries and a persistent cache.

Fixture files and the cache journal share one record format, newline-delimited
JSON: ``{"q": <canonical query>, "n": <count>, "src": <source id>,
"t": <ISO-8601 UTC>}``. A fixture may carry one metadata record with ``"q": ""``
holding the total-page estimate behind absolute weights; it is configuration,
not an answerable query. Counts drift over time on live sources, so the cache
is an append-only journal that preserves history rather than a mutable map.
"""

import json
import os
import threading
import time
import urllib.parse
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Protocol

import requests

from meaningbound.corpus import CorpusIndex
from meaningbound.errors import (
    FixtureFormatError,
    InvalidCountError,
    MalformedResponseError,
    MissingApiKeyError,
    MissingFixtureEntryError,
    ProviderError,
    QuerySyntaxError,
    StorageFailureError,
    TransportFailureError,
)
from meaningbound.model import require_count
from meaningbound.query import Query, canonical_query_string, parse_query

DEFAULT_TOTAL_PAGES = 55_000_000_000

_TIME_FORMAT = "%Y-%m-%dT%H:%M:%SZ"


def utc_now_seconds() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class CountRecord:
    """One observed count: the query, its count, where and when it came from."""

    query: Query
    count: int
    source_id: str
    observed_at: datetime

    def __post_init__(self) -> None:
        require_count(self.count, "recorded count")
        if self.observed_at.tzinfo is None:
            raise ValueError("observed_at must be timezone-aware (UTC)")

    @property
    def canonical(self) -> str:
        return canonical_query_string(self.query)

    def to_json_line(self) -> str:
        payload = {
            "q": self.canonical,
            "n": self.count,
            "src": self.source_id,
            "t": self.observed_at.astimezone(timezone.utc).strftime(_TIME_FORMAT),
        }
        return json.dumps(payload, ensure_ascii=False)


def _parse_timestamp(raw: str) -> datetime:
    text = raw.replace("Z", "+00:00") if raw.endswith("Z") else raw
    stamp = datetime.fromisoformat(text)
    if stamp.tzinfo is None:
        raise ValueError(f"timestamp lacks a timezone: {raw!r}")
    return stamp.astimezone(timezone.utc).replace(microsecond=0)


def record_from_json(obj: dict) -> CountRecord:
    """Build a record from a parsed journal/fixture line; extra keys are ignored."""
    query = parse_query(obj["q"])
    if canonical_query_string(query) != obj["q"]:
        raise FixtureFormatError(
            f"query key is not canonical: {obj['q']!r} "
            f"(canonical form: {canonical_query_string(query)!r})"
        )
    return CountRecord(
        query=query,
        count=obj["n"],
        source_id=obj.get("src", "unknown"),
        observed_at=_parse_timestamp(obj["t"]),
    )


class CountProvider(Protocol):
    """What the analysis layer needs from a count source."""

    def get_count(self, query: Query) -> CountRecord: ...

    @property
    def total_pages(self) -> int | None: ...


class LocalIndexProvider:
    """Counts straight from a local corpus index.

    Advertises the corpus document count as its page total, so absolute
    weights measured against this provider are fractions of the corpus.
    """

    def __init__(self, index: CorpusIndex, source_id: str = "local"):
        self._index = index
        self.source_id = source_id

    @property
    def total_pages(self) -> int:
        return self._index.total_docs

    def get_count(self, query: Query) -> CountRecord:
        return CountRecord(
            query=query,
            count=self._index.count(query),
            source_id=self.source_id,
            observed_at=utc_now_seconds(),
        )


class FixtureProvider:
    """Replays recorded counts; a missing entry is an error, never a zero."""

    def __init__(
        self,
        records: Iterable[CountRecord],
        total_pages: int | None = None,
        source_id: str = "fixture",
    ):
        self.source_id = source_id
        self._total_pages = total_pages
        self._records: dict[str, CountRecord] = {}
        for record in records:
            key = record.canonical
            if key in self._records:
                raise FixtureFormatError(f"duplicate fixture entry: {key!r}")
            self._records[key] = record

    @classmethod
    def from_path(cls, path: str | Path) -> "FixtureProvider":
        path = Path(path)
        records: list[CountRecord] = []
        total_pages: int | None = None
        try:
            lines = path.read_text("utf-8").splitlines()
        except OSError as exc:
            raise FixtureFormatError(f"cannot read fixture {path}: {exc}") from exc
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FixtureFormatError(f"{path}:{lineno}: bad JSON: {exc}") from exc
            if obj.get("q") == "":
                total_pages = require_count(obj["n"], "fixture page total")
                continue
            try:
                records.append(record_from_json(obj))
            except (KeyError, ValueError, QuerySyntaxError, InvalidCountError) as exc:
                raise FixtureFormatError(f"{path}:{lineno}: {exc}") from exc
        return cls(records, total_pages=total_pages, source_id=f"fixture:{path.name}")

    @property
    def total_pages(self) -> int | None:
        return self._total_pages

    def __len__(self) -> int:
        return len(self._records)

    def get_count(self, query: Query) -> CountRecord:
        key = canonical_query_string(query)
        record = self._records.get(key)
        if record is None:
            raise MissingFixtureEntryError(f"fixture has no entry for query: {key!r}")
        return record


class CountCache:
    """Append-only journal of count records keyed by canonical query string.

    ``get`` returns the most recent record for a query (latest observed_at,
    append order breaking ties); ``put`` appends and never rewrites history.
    Reads are lock-free on the in-memory view; appends are serialized.
    """

    def __init__(self, path: str | Path):
        self._path = Path(path)
        self._lock = threading.Lock()
        self._latest: dict[str, tuple[datetime, int, CountRecord]] = {}
        self._seq = 0
        if self._path.exists():
            self._load()

    def _load(self) -> None:
        try:
            lines = self._path.read_text("utf-8").splitlines()
        except OSError as exc:
            raise StorageFailureError(f"cannot read cache {self._path}: {exc}") from exc
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                record = record_from_json(json.loads(line))
            except (
                json.JSONDecodeError,
                KeyError,
                ValueError,
                QuerySyntaxError,
                FixtureFormatError,
            ) as exc:
                raise StorageFailureError(
                    f"{self._path}:{lineno}: corrupt cache line: {exc}"
                ) from exc
            self._remember(record)

    def _remember(self, record: CountRecord) -> None:
        self._seq += 1
        key = record.canonical
        current = self._latest.get(key)
        candidate = (record.observed_at, self._seq, record)
        if current is None or candidate[:2] >= current[:2]:
            self._latest[key] = candidate

    def get(self, canonical: str) -> CountRecord | None:
        entry = self._latest.get(canonical)
        return entry[2] if entry else None

    def put(self, record: CountRecord) -> None:
        line = record.to_json_line()
        with self._lock:
            try:
                self._path.parent.mkdir(parents=True, exist_ok=True)
                with self._path.open("a", encoding="utf-8") as handle:
                    handle.write(line + "\n")
            except OSError as exc:
                raise StorageFailureError(
                    f"cannot append to cache {self._path}: {exc}"
                ) from exc
            self._remember(record)


@dataclass(frozen=True)
class ProviderConfig:
    """Web count-source configuration.

    ``endpoint_url`` must contain a ``{query}`` placeholder; the percent-
    encoded canonical query string is substituted into it. The API key is
    read from the environment variable named by ``api_key_env`` at request
    time and never stored anywhere.
    """

    endpoint_url: str
    api_key_env: str = ""
    api_key_header: str = "X-Api-Key"
    count_field: str = "totalResults"
    min_request_interval_ms: int = 1000
    max_retries: int = 2
    source_id: str = "web"
    timeout_s: float = 10.0

    def __post_init__(self) -> None:
        if "{query}" not in self.endpoint_url:
            raise ValueError("endpoint_url needs a {query} placeholder")
        if self.min_request_interval_ms <= 0:
            raise ValueError("min_request_interval_ms must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")

    @classmethod
    def from_path(cls, path: str | Path) -> "ProviderConfig":
        with Path(path).open(encoding="utf-8") as handle:
            return cls(**json.load(handle))


def _dig(payload, dotted: str):
    """Walk a dotted field path through nested dicts (and list indices)."""
    node = payload
    for part in dotted.split("."):
        if isinstance(node, list) and part.lstrip("-").isdigit():
            try:
                node = node[int(part)]
            except IndexError:
                return None
        elif isinstance(node, dict):
            if part not in node:
                return None
            node = node[part]
        else:
            return None
    return node


class WebProvider:
    """Hit-count client over a configurable HTTP endpoint.

    Consults the cache first; outbound requests are serialized through one
    rate-limited dispatch point. Retryable failures (connection errors, HTTP
    429 and 5xx) are retried up to ``max_retries`` times before surfacing as
    :class:`TransportFailureError`; unparseable responses surface immediately
    as :class:`MalformedResponseError`.
    """

    def __init__(
        self,
        config: ProviderConfig,
        cache: CountCache | None = None,
        session=None,
        sleep: Callable[[float], None] = time.sleep,
        monotonic: Callable[[], float] = time.monotonic,
    ):
        self.config = config
        self.cache = cache
        self._session = session or requests.Session()
        self._sleep = sleep
        self._monotonic = monotonic
        self._lock = threading.Lock()
        self._last_request: float | None = None

    @property
    def source_id(self) -> str:
        return self.config.source_id

    @property
    def total_pages(self) -> None:
        return None

    def _headers(self) -> dict[str, str]:
        if not self.config.api_key_env:
            return {}
        key = os.environ.get(self.config.api_key_env)
        if not key:
            raise MissingApiKeyError(
                f"environment variable {self.config.api_key_env!r} is not set"
            )
        return {self.config.api_key_header: key}

    def _throttle(self) -> None:
        interval = self.config.min_request_interval_ms / 1000.0
        if self._last_request is not None:
            elapsed = self._monotonic() - self._last_request
            if elapsed < interval:
                self._sleep(interval - elapsed)
        self._last_request = self._monotonic()

    def _extract_count(self, response, canonical: str) -> int:
        try:
            payload = response.json()
        except ValueError as exc:
            raise MalformedResponseError(
                f"response for {canonical!r} is not JSON: {exc}"
            ) from exc
        value = _dig(payload, self.config.count_field)
        if isinstance(value, str) and value.isdigit():
            value = int(value)
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise MalformedResponseError(
                f"no usable count at field {self.config.count_field!r} "
                f"for {canonical!r}: {value!r}"
            )
        return value

    def get_count(self, query: Query, force_refresh: bool = False) -> CountRecord:
        canonical = canonical_query_string(query)
        if self.cache is not None and not force_refresh:
            cached = self.cache.get(canonical)
            if cached is not None:
                return cached
        url = self.config.endpoint_url.replace(
            "{query}", urllib.parse.quote(canonical, safe="")
        )
        headers = self._headers()
        last_failure: str = "no request attempted"
        with self._lock:
            for _attempt in range(self.config.max_retries + 1):
                self._throttle()
                try:
                    response = self._session.get(
                        url, headers=headers, timeout=self.config.timeout_s
                    )
                except requests.RequestException as exc:
                    last_failure = f"transport error: {exc}"
                    continue
                if response.status_code == 429 or response.status_code >= 500:
                    last_failure = f"HTTP {response.status_code}"
                    continue
                if response.status_code != 200:
                    raise TransportFailureError(
                        f"HTTP {response.status_code} for {canonical!r}"
                    )
                count = self._extract_count(response, canonical)
                record = CountRecord(
                    query=query,
                    count=count,
                    source_id=self.config.source_id,
                    observed_at=utc_now_seconds(),
                )
                if self.cache is not None:
                    self.cache.put(record)
                return record
        raise TransportFailureError(
            f"gave up on {canonical!r} after "
            f"{self.config.max_retries + 1} attempts ({last_failure})"
        )


def record_fixture(
    provider,
    queries: Iterable[Query],
    out_path: str | Path,
    force_refresh: bool = False,
) -> list[CountRecord]:
    """Freeze live counts into a replayable fixture file.

    Repeated queries are recorded once. If the provider advertises a page
    total, it is written as the fixture's metadata record so a replay
    resolves absolute weights against the same total.
    """
    out_path = Path(out_path)
    records: list[CountRecord] = []
    seen: set[str] = set()
    for query in queries:
        key = canonical_query_string(query)
        if key in seen:
            continue
        seen.add(key)
        try:
            if isinstance(provider, WebProvider):
                records.append(provider.get_count(query, force_refresh=force_refresh))
            else:
                records.append(provider.get_count(query))
        except ProviderError as exc:
            raise type(exc)(f"while recording query {key!r}: {exc}") from exc
    lines = []
    total = getattr(provider, "total_pages", None)
    if total is not None:
        meta = {
            "q": "",
            "n": total,
            "src": getattr(provider, "source_id", "unknown"),
            "t": utc_now_seconds().strftime(_TIME_FORMAT),
        }
        lines.append(json.dumps(meta, ensure_ascii=False))
    lines.extend(record.to_json_line() for record in records)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return records
