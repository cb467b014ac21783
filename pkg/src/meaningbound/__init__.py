"""Meaning bounds between words from document-level co-occurrence counts.

Quantifies how strongly two words are bound in meaning (relative weight over
absolute weight, the exponential of PMI), corrects inconsistent source
counts, and detects non-classical conjunction behavior: exemplars whose
weight under a conjunction exceeds their weight under both constituent
concepts (the Guppy effect).
"""

__version__ = "0.1.0"

from meaningbound import errors
from meaningbound._kernels import backend as kernel_backend
from meaningbound.analysis import (
    ConceptTriple,
    ExemplarRegion,
    ScanEntry,
    StudyConfig,
    StudyError,
    StudyReport,
    analyze_exemplar,
    guppy_scan,
    run_study,
    study_queries,
)
from meaningbound.corpus import CorpusIndex, Document, load_corpus
from meaningbound.model import (
    CellReport,
    ConjunctionVerdict,
    MeaningBoundClass,
    RawCellCounts,
    absolute_weight,
    classify_bound,
    classify_conjunction,
    compute_cell,
    correction_factor,
    corrected_count,
    meaning_bound,
    meaning_bound_exact,
    relative_weight,
)
from meaningbound.providers import (
    DEFAULT_TOTAL_PAGES,
    CountCache,
    CountRecord,
    FixtureProvider,
    LocalIndexProvider,
    ProviderConfig,
    WebProvider,
    record_fixture,
)
from meaningbound.query import Query, TermPattern, canonical_query_string, parse_query
from meaningbound.text import normalize

__all__ = [
    "__version__",
    "errors",
    "kernel_backend",
    "normalize",
    "TermPattern",
    "Query",
    "canonical_query_string",
    "parse_query",
    "Document",
    "CorpusIndex",
    "load_corpus",
    "relative_weight",
    "absolute_weight",
    "correction_factor",
    "corrected_count",
    "meaning_bound",
    "meaning_bound_exact",
    "classify_bound",
    "classify_conjunction",
    "compute_cell",
    "RawCellCounts",
    "CellReport",
    "MeaningBoundClass",
    "ConjunctionVerdict",
    "CountRecord",
    "CountCache",
    "FixtureProvider",
    "LocalIndexProvider",
    "WebProvider",
    "ProviderConfig",
    "record_fixture",
    "DEFAULT_TOTAL_PAGES",
    "ConceptTriple",
    "StudyConfig",
    "StudyReport",
    "StudyError",
    "ExemplarRegion",
    "ScanEntry",
    "analyze_exemplar",
    "run_study",
    "guppy_scan",
    "study_queries",
    "bundled_petfish_fixture",
]


def bundled_petfish_fixture():
    """Path to the bundled May-2010 web-count dataset for the pet/fish study."""
    from importlib import resources

    return resources.files("meaningbound") / "data" / "petfish_web_2010.jsonl"
