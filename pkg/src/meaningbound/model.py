"""Core arithmetic on document counts: weights, correction, meaning bounds.

Everything here is a pure function of its arguments. Counts are exact
non-negative integers (validated to the 63-bit range); derived quantities are
double-precision floats and are never rounded internally. Display rounding is
a separate, explicit step (:func:`round_half_away`, :func:`display_value`)
applied only when rendering.

The quantities:

* relative weight  w(A, X) = n(A and X) / n(A) -- how strongly word X is
  present in the set of documents containing word A;
* absolute weight  n(X) / n(total pages) -- the word's baseline presence;
* correction factor  n(A) / (n(A and X) + n(A and not X)) -- rescales counts
  from sources whose conjunction and negated-conjunction counts do not add up
  to the plain count (large web indexes routinely violate this additivity);
* meaning bound  M = relative weight / absolute weight, equivalently
  n(A,X) * n(total) / (n(A) * n(X)); M > 1 is an attractive bound, M < 1
  repulsive, M = 1 none (numerically, M is the exponential of PMI).

A conjunction behaves classically with respect to an exemplar when the
exemplar's weight under the conjunction does not exceed its weight under
either constituent; exceeding both is the Guppy effect (double overextension).
"""

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

from meaningbound.errors import (
    CountOverflowError,
    InconsistentCountsError,
    InvalidCountError,
    ZeroDenominatorError,
)

COUNT_MAX = 2**63 - 1

# Display precision used by every renderer (matches the reference report
# layout: 7 decimals for correction factors and relative weights, 4 for
# meaning bounds, 9 for absolute weights, integers for corrected counts).
CORR_DECIMALS = 7
REL_W_DECIMALS = 7
MEANING_BOUND_DECIMALS = 4
ABS_W_DECIMALS = 9


class MeaningBoundClass(Enum):
    """Sign of a meaning bound relative to the neutral value 1."""

    ATTRACTIVE = "attractive"
    REPULSIVE = "repulsive"
    NEUTRAL = "neutral"

    @property
    def label(self) -> str:
        return self.name.capitalize()


class ConjunctionVerdict(Enum):
    """How a conjunction's weights relate to its constituents' weights."""

    CLASSICAL = "classical"
    OVEREXTENDED_ON_FIRST = "overextended_on_first"
    OVEREXTENDED_ON_SECOND = "overextended_on_second"
    GUPPY_EFFECT = "guppy_effect"

    @property
    def label(self) -> str:
        return "".join(part.capitalize() for part in self.value.split("_"))


def require_count(value: int, what: str = "count") -> int:
    """Validate that ``value`` is an exact count: an int in [0, 2**63 - 1]."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidCountError(f"{what} must be an integer, got {value!r}")
    if value < 0:
        raise InvalidCountError(f"{what} must be non-negative, got {value}")
    if value > COUNT_MAX:
        raise CountOverflowError(f"{what} exceeds 2**63 - 1: {value}")
    return value


def relative_weight(n_ax: int, n_a: int) -> float:
    """Fraction of documents containing A that also contain X.

    Values above 1 are returned as-is; a noisy source can report a
    conjunction count above the plain count, and clamping would hide that.
    """
    require_count(n_ax, "co-occurrence count")
    require_count(n_a, "concept count")
    if n_a == 0:
        raise ZeroDenominatorError("relative weight needs a positive concept count")
    return n_ax / n_a


def absolute_weight(n_x: int, n_www: int) -> float:
    """Fraction of all documents containing the word."""
    require_count(n_x, "word count")
    require_count(n_www, "total page count")
    if n_www == 0:
        raise ZeroDenominatorError("absolute weight needs a positive page total")
    if n_x > n_www:
        raise InconsistentCountsError(
            f"word count {n_x} exceeds the page total {n_www}"
        )
    return n_x / n_www


def correction_factor(n_a: int, n_ax: int, n_a_not_x: int) -> float:
    """n(A) divided by the sum of the with-X and without-X counts.

    Exactly 1 on an additively consistent source; above or below 1 when the
    source's two disjoint parts fail to sum to the whole.
    """
    require_count(n_a, "concept count")
    require_count(n_ax, "co-occurrence count")
    require_count(n_a_not_x, "negated co-occurrence count")
    denom = n_ax + n_a_not_x
    if denom == 0:
        raise ZeroDenominatorError(
            "correction factor needs at least one non-zero part count"
        )
    return n_a / denom


def corrected_count(n_ax: int, corr: float) -> float:
    """The co-occurrence count rescaled by the correction factor, unrounded."""
    require_count(n_ax, "co-occurrence count")
    if not corr > 0:
        raise ValueError(f"correction factor must be positive, got {corr}")
    return corr * n_ax


def round_half_away(x: float) -> int:
    """Round to the nearest integer, halves away from zero (display rule)."""
    return int(
        Decimal(repr(x)).quantize(Decimal("1"), rounding=ROUND_HALF_UP)
    )


def display_value(x: float, decimals: int) -> float:
    """The float nearest to ``x`` rounded to ``decimals`` decimal places."""
    return float(f"{x:.{decimals}f}")


def meaning_bound(rel_w: float, abs_w: float) -> float:
    """Relative weight divided by absolute weight."""
    if rel_w < 0:
        raise ValueError(f"relative weight must be non-negative, got {rel_w}")
    if not abs_w > 0:
        raise ZeroDenominatorError("meaning bound needs a positive absolute weight")
    return rel_w / abs_w


def meaning_bound_exact(n_ax: int, n_a: int, n_x: int, n_www: int) -> float:
    """Meaning bound straight from counts: n(A,X) * n(www) / (n(A) * n(X)).

    Both products are formed exactly in unbounded integers before a single
    correctly-rounded division, so the result is the best double and the
    function is symmetric in (n_a, n_x) bit for bit.
    """
    require_count(n_ax, "co-occurrence count")
    require_count(n_a, "first word count")
    require_count(n_x, "second word count")
    require_count(n_www, "total page count")
    if n_a == 0 or n_x == 0 or n_www == 0:
        raise ZeroDenominatorError("meaning bound needs positive word and page totals")
    return (n_ax * n_www) / (n_a * n_x)


def classify_bound(m: float, eps: float = 0.0) -> MeaningBoundClass:
    """Attractive above 1 + eps, repulsive below 1 - eps, neutral between."""
    if m < 0:
        raise ValueError(f"meaning bound must be non-negative, got {m}")
    if eps < 0:
        raise ValueError(f"neutral band must be non-negative, got {eps}")
    if m > 1.0 + eps:
        return MeaningBoundClass.ATTRACTIVE
    if m < 1.0 - eps:
        return MeaningBoundClass.REPULSIVE
    return MeaningBoundClass.NEUTRAL


def classify_conjunction(w_a: float, w_b: float, w_ab: float) -> ConjunctionVerdict:
    """Compare a conjunction's weight against its constituents' weights.

    Strict comparisons on the overextension side: an exact tie with the larger
    constituent weight still counts as classical. The verdict depends only on
    the rank order of the three weights.
    """
    for name, w in (("w_a", w_a), ("w_b", w_b), ("w_ab", w_ab)):
        if w < 0:
            raise ValueError(f"{name} must be non-negative, got {w}")
    over_first = w_ab > w_a
    over_second = w_ab > w_b
    if over_first and over_second:
        return ConjunctionVerdict.GUPPY_EFFECT
    if over_first:
        return ConjunctionVerdict.OVEREXTENDED_ON_FIRST
    if over_second:
        return ConjunctionVerdict.OVEREXTENDED_ON_SECOND
    return ConjunctionVerdict.CLASSICAL


@dataclass(frozen=True)
class RawCellCounts:
    """The five raw integers behind one report cell.

    No ordering is required between ``with_exemplar + without_exemplar`` and
    ``concept_total``: exposing that mismatch is what the correction factor
    is for.
    """

    concept_total: int  # n(A)
    with_exemplar: int  # n(A and X)
    without_exemplar: int  # n(A and not X)
    exemplar_total: int  # n(X)
    total_pages: int  # n(www)

    def __post_init__(self) -> None:
        require_count(self.concept_total, "concept total")
        require_count(self.with_exemplar, "co-occurrence count")
        require_count(self.without_exemplar, "negated co-occurrence count")
        require_count(self.exemplar_total, "exemplar total")
        require_count(self.total_pages, "page total")
        if self.total_pages == 0:
            raise InvalidCountError("page total must be positive")


@dataclass(frozen=True)
class CellReport:
    """Derived quantities for one cell, at full precision."""

    correction: float
    corrected: float
    rel_w: float
    abs_w: float
    bound: float
    bound_class: MeaningBoundClass
    inconsistent: bool  # rel_w > 1: the source reported more co-occurrences than occurrences

    @property
    def corrected_display(self) -> int:
        return round_half_away(self.corrected)


def compute_cell(counts: RawCellCounts, eps: float = 0.0) -> CellReport:
    """Run one cell through the full correction-and-weighing pipeline.

    The relative weight is computed from the real-valued corrected count, not
    its display rounding, which is what reproduces reference values to the
    last printed digit.
    """
    if counts.concept_total == 0:
        raise ZeroDenominatorError("cell needs a positive concept total")
    corr = correction_factor(
        counts.concept_total, counts.with_exemplar, counts.without_exemplar
    )
    corrected = corrected_count(counts.with_exemplar, corr)
    rel_w = corrected / counts.concept_total
    abs_w = absolute_weight(counts.exemplar_total, counts.total_pages)
    bound = meaning_bound(rel_w, abs_w)
    return CellReport(
        correction=corr,
        corrected=corrected,
        rel_w=rel_w,
        abs_w=abs_w,
        bound=bound,
        bound_class=classify_bound(bound, eps),
        inconsistent=rel_w > 1.0,
    )
