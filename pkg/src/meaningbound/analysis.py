"""Full co-occurrence studies: fetch counts, correct them, weigh, classify.

A study takes a concept pair plus its conjunction (e.g. pet / fish /
"pet fish") and a list of exemplar words. For every exemplar it fetches, per
concept column, the plain count, the co-occurrence count and the negated
co-occurrence count, applies the per-cell count correction, and derives
relative weights, meaning bounds and verdicts. The report is the executable
form of the reference table this pipeline reproduces.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from meaningbound.errors import MeaningBoundError
from meaningbound.model import (
    ABS_W_DECIMALS,
    CORR_DECIMALS,
    MEANING_BOUND_DECIMALS,
    REL_W_DECIMALS,
    CellReport,
    ConjunctionVerdict,
    RawCellCounts,
    classify_conjunction,
    compute_cell,
    display_value,
    require_count,
)
from meaningbound.providers import DEFAULT_TOTAL_PAGES
from meaningbound.query import Query, TermPattern, canonical_query_string

COLUMN_KEYS = ("first", "second", "conjunction")


@dataclass(frozen=True)
class ConceptTriple:
    """Two concepts and the pattern standing for their conjunction."""

    first: TermPattern
    second: TermPattern
    conjunction: TermPattern

    @classmethod
    def from_texts(
        cls, first: str, second: str, conjunction: str | None = None
    ) -> "ConceptTriple":
        """Build a triple from raw texts; the conjunction defaults to the
        exact phrase joining the two concepts, which is how conjunctions are
        searched."""
        p_first = TermPattern.parse(first)
        p_second = TermPattern.parse(second)
        if conjunction is None:
            p_conj = TermPattern(p_first.tokens + p_second.tokens)
        else:
            p_conj = TermPattern.parse(conjunction)
        return cls(p_first, p_second, p_conj)

    @property
    def patterns(self) -> tuple[TermPattern, TermPattern, TermPattern]:
        return (self.first, self.second, self.conjunction)


@dataclass(frozen=True)
class StudyConfig:
    """Study-wide knobs: the page total and the neutral band for bounds."""

    n_www: int = DEFAULT_TOTAL_PAGES
    eps: float = 0.0

    def __post_init__(self) -> None:
        require_count(self.n_www, "page total")
        if self.n_www == 0:
            raise ValueError("page total must be positive")
        if self.eps < 0:
            raise ValueError("neutral band must be non-negative")


class CellFetchError(MeaningBoundError):
    """A study cell could not be computed; carries the cell's identity."""

    def __init__(self, exemplar: TermPattern, column: str, detail: Exception):
        self.exemplar = exemplar
        self.column = column
        self.detail = detail
        super().__init__(
            f"cell [{exemplar.canonical()} / {column}]: {detail}"
        )


class StudyError(MeaningBoundError):
    """One or more regions failed; completed regions are preserved."""

    def __init__(self, failures: Sequence[CellFetchError], partial: "StudyReport"):
        self.failures = list(failures)
        self.partial = partial
        lines = "; ".join(str(f) for f in self.failures)
        super().__init__(f"{len(self.failures)} region(s) failed: {lines}")


@dataclass(frozen=True)
class RegionColumn:
    """One concept column of one exemplar region."""

    pattern: TermPattern
    total: int  # plain count of the column pattern
    rel_n: int  # count with the exemplar
    rel_not_n: int  # count without the exemplar
    report: CellReport


@dataclass(frozen=True)
class ExemplarRegion:
    """All three concept columns for one exemplar, plus the verdicts."""

    exemplar: TermPattern
    n_x: int
    abs_w: float
    columns: tuple[RegionColumn, RegionColumn, RegionColumn]
    verdict_weights: ConjunctionVerdict
    verdict_bounds: ConjunctionVerdict


@dataclass(frozen=True)
class StudyReport:
    """The full study: column totals plus one region per exemplar, in order."""

    triple: ConceptTriple
    config: StudyConfig
    totals: tuple[int, int, int]
    regions: tuple[ExemplarRegion, ...]

    def to_json_dict(self) -> dict:
        """Stable mapping used by the JSON and CSV renderers.

        Derived values carry display precision (full precision lives on the
        report objects); no timestamps or source ids, so identical counts
        serialize to identical bytes whatever provider produced them.
        """
        regions = []
        for region in self.regions:
            columns = {}
            for key, column in zip(COLUMN_KEYS, region.columns):
                cell = column.report
                columns[key] = {
                    "pattern": column.pattern.canonical(),
                    "rel_n": column.rel_n,
                    "rel_not_n": column.rel_not_n,
                    "corr": display_value(cell.correction, CORR_DECIMALS),
                    "rel_n_corr": cell.corrected_display,
                    "rel_w": display_value(cell.rel_w, REL_W_DECIMALS),
                    "m": display_value(cell.bound, MEANING_BOUND_DECIMALS),
                    "bound": cell.bound_class.value,
                    "inconsistent": cell.inconsistent,
                }
            regions.append(
                {
                    "exemplar": region.exemplar.canonical(),
                    "n_x": region.n_x,
                    "abs_w": display_value(region.abs_w, ABS_W_DECIMALS),
                    "columns": columns,
                    "verdict": region.verdict_weights.value,
                    "verdict_from_bounds": region.verdict_bounds.value,
                }
            )
        return {
            "study": {
                "first": self.triple.first.canonical(),
                "second": self.triple.second.canonical(),
                "conjunction": self.triple.conjunction.canonical(),
                "n_www": self.config.n_www,
                "eps": self.config.eps,
            },
            "totals": dict(zip(COLUMN_KEYS, self.totals)),
            "regions": regions,
        }


@dataclass(frozen=True)
class ScanEntry:
    """One scan candidate with its verdict and three meaning bounds."""

    exemplar: TermPattern
    verdict: ConjunctionVerdict
    bounds: tuple[float, float, float]  # (first, second, conjunction)


def study_queries(
    triple: ConceptTriple, exemplars: Iterable[TermPattern]
) -> list[Query]:
    """Every query a study will issue, in fetch order, without repeats."""
    queries: list[Query] = [Query(p) for p in triple.patterns]
    for exemplar in exemplars:
        queries.append(Query(exemplar))
        for pattern in triple.patterns:
            queries.append(Query(pattern, exemplar))
            queries.append(Query(pattern, exemplar, negated=True))
    seen: set[str] = set()
    unique: list[Query] = []
    for query in queries:
        key = canonical_query_string(query)
        if key not in seen:
            seen.add(key)
            unique.append(query)
    return unique


def _fetch(provider, query: Query, exemplar: TermPattern, column: str) -> int:
    try:
        return provider.get_count(query).count
    except MeaningBoundError as exc:
        raise CellFetchError(exemplar, column, exc) from exc


def _fetch_totals(provider, triple: ConceptTriple) -> tuple[int, int, int]:
    totals = []
    for key, pattern in zip(COLUMN_KEYS, triple.patterns):
        totals.append(_fetch(provider, Query(pattern), pattern, f"total:{key}"))
    return tuple(totals)


def _build_region(
    triple: ConceptTriple,
    exemplar: TermPattern,
    provider,
    config: StudyConfig,
    totals: tuple[int, int, int],
) -> ExemplarRegion:
    n_x = _fetch(provider, Query(exemplar), exemplar, "exemplar")
    columns = []
    for key, pattern, total in zip(COLUMN_KEYS, triple.patterns, totals):
        rel_n = _fetch(provider, Query(pattern, exemplar), exemplar, key)
        rel_not_n = _fetch(
            provider, Query(pattern, exemplar, negated=True), exemplar, key
        )
        counts = RawCellCounts(
            concept_total=total,
            with_exemplar=rel_n,
            without_exemplar=rel_not_n,
            exemplar_total=n_x,
            total_pages=config.n_www,
        )
        try:
            report = compute_cell(counts, config.eps)
        except MeaningBoundError as exc:
            raise CellFetchError(exemplar, key, exc) from exc
        columns.append(
            RegionColumn(
                pattern=pattern,
                total=total,
                rel_n=rel_n,
                rel_not_n=rel_not_n,
                report=report,
            )
        )
    weights = tuple(col.report.rel_w for col in columns)
    bounds = tuple(col.report.bound for col in columns)
    return ExemplarRegion(
        exemplar=exemplar,
        n_x=n_x,
        abs_w=columns[0].report.abs_w,
        columns=tuple(columns),
        verdict_weights=classify_conjunction(*weights),
        verdict_bounds=classify_conjunction(*bounds),
    )


def analyze_exemplar(
    triple: ConceptTriple,
    exemplar: TermPattern,
    provider,
    config: StudyConfig = StudyConfig(),
) -> ExemplarRegion:
    """Fetch and derive one exemplar region against the three columns."""
    totals = _fetch_totals(provider, triple)
    return _build_region(triple, exemplar, provider, config, totals)


def run_study(
    triple: ConceptTriple,
    exemplars: Sequence[TermPattern],
    provider,
    config: StudyConfig = StudyConfig(),
) -> StudyReport:
    """Assemble the full report: totals once, then one region per exemplar.

    A failing cell aborts only its own region; after all exemplars are
    attempted, any failures surface as one :class:`StudyError` that lists
    every failed cell and carries the partial report with the completed
    regions.
    """
    totals = _fetch_totals(provider, triple)
    regions: list[ExemplarRegion] = []
    failures: list[CellFetchError] = []
    for exemplar in exemplars:
        try:
            regions.append(_build_region(triple, exemplar, provider, config, totals))
        except CellFetchError as exc:
            failures.append(exc)
    report = StudyReport(
        triple=triple, config=config, totals=totals, regions=tuple(regions)
    )
    if failures:
        raise StudyError(failures, partial=report)
    return report


def guppy_scan(
    triple: ConceptTriple,
    candidates: Sequence[TermPattern],
    provider,
    config: StudyConfig = StudyConfig(),
) -> list[ScanEntry]:
    """Rank candidate exemplars by conjunction meaning bound.

    Double-overextended candidates come first, then the rest, each group in
    descending conjunction-bound order with lexicographic tie-breaks.
    """
    report = run_study(triple, candidates, provider, config)
    entries = [
        ScanEntry(
            exemplar=region.exemplar,
            verdict=region.verdict_weights,
            bounds=tuple(col.report.bound for col in region.columns),
        )
        for region in report.regions
    ]
    entries.sort(
        key=lambda e: (
            e.verdict is not ConjunctionVerdict.GUPPY_EFFECT,
            -e.bounds[2],
            e.exemplar.canonical(),
        )
    )
    return entries
