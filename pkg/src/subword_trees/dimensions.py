"""Growth-class analysis of subword-closed languages.

Two integer parameters decide, together with finiteness of the language and
emptiness of its complement, how fast the four decision-tree depth measures
grow with the slice length: the homogeneity dimension (largest ``m`` such that
``a^m a' a^m`` is a member for some letter ``a``, with ``a'`` the opposite
letter) and the heterogeneity dimension (same with test word ``a^m a'^m``).
Each language falls into exactly one of five classes with a fixed growth
signature per measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .language import ALPHABET, Language

INFINITY = math.inf

CONSTANT = "CONSTANT"
LOG = "LOG"
LINEAR = "LINEAR"

MEASURES = ("rd", "ra", "md", "ma")

#: Growth signature (rd, ra, md, ma) per class index.
CLASS_PREDICTIONS: dict[int, dict[str, str]] = {
    1: {"rd": LINEAR, "ra": LINEAR, "md": LINEAR, "ma": LINEAR},
    2: {"rd": LINEAR, "ra": LINEAR, "md": CONSTANT, "ma": CONSTANT},
    3: {"rd": LOG, "ra": CONSTANT, "md": LINEAR, "ma": LINEAR},
    4: {"rd": CONSTANT, "ra": CONSTANT, "md": LINEAR, "ma": LINEAR},
    5: {"rd": CONSTANT, "ra": CONSTANT, "md": CONSTANT, "ma": CONSTANT},
}


@dataclass(frozen=True)
class DimensionReport:
    """Classification summary for one language."""

    name: str
    hom: int | float
    het: int | float
    is_finite_language: bool
    complement_empty: bool
    shortest_complement_word_length: int | None
    class_index: int
    predictions: dict[str, str]


def _pad_word(bit: str, m: int, hetero: bool) -> str:
    other = "1" if bit == "0" else "0"
    if hetero:
        return bit * m + other * m
    return bit * m + other + bit * m


def _dimension(lang: Language, hetero: bool) -> int | float:
    """Shared decision procedure for both dimensions.

    Let M be the maximum obstruction length.  The qualifying m-set of each
    letter is downward closed, so the parameter is infinite iff the test word
    at m = M is a member for some letter; an obstruction short enough to exist
    embeds into the m = M test word whenever it embeds into any larger one.
    Otherwise the maximum qualifying m is below M and a downward scan finds it.
    Languages where no m qualifies (the empty language, or {empty word} for the
    homogeneity case) get 0 by convention.
    """
    M = max((len(f) for f in lang.obstructions), default=0)
    for a in ALPHABET:
        if lang.contains(_pad_word(a, M, hetero)):
            return INFINITY
    for m in range(M - 1, -1, -1):
        for a in ALPHABET:
            if lang.contains(_pad_word(a, m, hetero)):
                return m
    return 0


def homogeneity_dimension(lang: Language) -> int | float:
    """Largest m with ``a^m a' a^m`` in the language for some letter a; inf if unbounded."""
    return _dimension(lang, hetero=False)


def heterogeneity_dimension(lang: Language) -> int | float:
    """Largest m with ``a^m a'^m`` in the language for some letter a; inf if unbounded."""
    return _dimension(lang, hetero=True)


def finiteness_flags(lang: Language) -> tuple[bool, bool, int | None]:
    """(is_finite_language, complement_empty, shortest_complement_word_length).

    The language is infinite iff for some letter ``a`` no obstruction consists
    solely of ``a``-letters: then every ``a^m`` is a member.  The complement is
    empty iff there are no obstructions.  A shortest complement word is always
    a shortest obstruction (obstructions are themselves non-members, and any
    non-member contains one).
    """
    is_infinite = any(
        not any(set(f) <= {a} for f in lang.obstructions) for a in ALPHABET
    )
    if not lang.obstructions:
        return (False, True, None)
    return (not is_infinite, False, min(len(f) for f in lang.obstructions))


def matching_classes(
    hom_infinite: bool, het_infinite: bool, is_finite: bool, complement_empty: bool
) -> list[int]:
    """Class indices whose defining row matches the four flags (should be exactly one)."""
    rows = []
    if hom_infinite and not complement_empty:
        rows.append(1)
    if hom_infinite and complement_empty:
        rows.append(2)
    if not hom_infinite and het_infinite:
        rows.append(3)
    if not hom_infinite and not het_infinite and not is_finite:
        rows.append(4)
    if not hom_infinite and not het_infinite and is_finite:
        rows.append(5)
    return rows


def classify(lang: Language) -> DimensionReport:
    """Full dimension report: both dimensions, finiteness flags, class, growth row."""
    hom = homogeneity_dimension(lang)
    het = heterogeneity_dimension(lang)
    finite, comp_empty, shortest = finiteness_flags(lang)
    rows = matching_classes(hom == INFINITY, het == INFINITY, finite, comp_empty)
    if len(rows) != 1:
        raise AssertionError(f"flags match {len(rows)} class rows for {lang.name}")
    cls = rows[0]
    return DimensionReport(
        name=lang.name,
        hom=hom,
        het=het,
        is_finite_language=finite,
        complement_empty=comp_empty,
        shortest_complement_word_length=shortest,
        class_index=cls,
        predictions=dict(CLASS_PREDICTIONS[cls]),
    )


def slice_size_bound(lang: Language) -> int | None:
    """Uniform bound on slice sizes when both dimensions are finite, else None.

    With m the larger dimension and t = 2m, every slice has at most
    ``2^(3t+3) * (2t+4)`` words: each member splits into three fragments of
    length at most t around two single-letter runs, and one run length is
    bounded by m.
    """
    hom = homogeneity_dimension(lang)
    het = heterogeneity_dimension(lang)
    if hom == INFINITY or het == INFINITY:
        return None
    t = 2 * int(max(hom, het))
    return 2 ** (3 * t + 3) * (2 * t + 4)


def format_extended(value: int | float) -> str:
    return "inf" if value == INFINITY else str(int(value))
