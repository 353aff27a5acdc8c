"""Workbench for symbolic dynamics on one-sided subshifts: language counting
and entropy bounds, spacing and beta shift families, integer-set density
calculus, and distribution-function chaos analysis."""

from .core import (
    Alphabet,
    EventuallyPeriodicPoint,
    Word,
    format_point,
    lex_compare,
    metric_rho,
    parse_point,
    periodic_point,
    point_prefix,
    shift_point,
    word,
)
from .errors import (
    AlphabetMismatch,
    PrecisionError,
    PreconditionError,
    ResourceCapExceeded,
    SearchFailure,
    ShiftlabError,
    SpecParseError,
    SpecValidationError,
)
from .langkit import (
    SubshiftSpec,
    contains_word,
    count_language,
    counting_shift,
    entropy_estimates,
    enumerate_language,
    forbidden_shift,
    full_shift,
    hereditary_check,
    max_density_word,
    max_symbol_count,
    mixing_probe,
    parse_shift_spec,
)
from .sets import parse_set_expr

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "EventuallyPeriodicPoint", "Word", "format_point",
    "lex_compare", "metric_rho", "parse_point", "periodic_point",
    "point_prefix", "shift_point", "word",
    "AlphabetMismatch", "PrecisionError", "PreconditionError",
    "ResourceCapExceeded", "SearchFailure", "ShiftlabError",
    "SpecParseError", "SpecValidationError",
    "SubshiftSpec", "contains_word", "count_language", "counting_shift",
    "entropy_estimates", "enumerate_language", "forbidden_shift",
    "full_shift", "hereditary_check", "max_density_word",
    "max_symbol_count", "mixing_probe", "parse_shift_spec",
    "parse_set_expr",
    "__version__",
]
