"""fuzzcheck: witness-producing checkers for fuzzy algebraic structures
over finite carriers and sampled numeric domains."""

from .sets import (
    Carrier,
    FuzzyPoint,
    FuzzySet,
    Verdict,
    as_grade,
    complement_in,
    format_grade,
    intersection,
    is_normal_element,
    is_subset,
    level_set,
    parse_grade,
    point_in,
    product,
    union,
)

__all__ = [
    "Carrier",
    "FuzzyPoint",
    "FuzzySet",
    "Verdict",
    "as_grade",
    "complement_in",
    "format_grade",
    "intersection",
    "is_normal_element",
    "is_subset",
    "level_set",
    "parse_grade",
    "point_in",
    "product",
    "union",
]

__version__ = "0.1.0"
