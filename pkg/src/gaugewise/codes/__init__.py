"""稳定子码、BB 码、Tanner 图审计与码距."""

from gaugewise.codes.bb import (
    BBCode,
    LogicalKind,
    Monomial,
    bb_build,
    bb_logical,
    format_monomial,
    parse_monomial,
)
from gaugewise.codes.distance import (
    UpperBound,
    distance_exact,
    distance_upper,
    minimum_logical,
)
from gaugewise.codes.logicals import LogicalPair, code_state, logical_basis
from gaugewise.codes.named import (
    css_from_dense,
    double_gross_code,
    four_two_two,
    gross_code,
    repetition_code,
    rotated_surface_code,
    surface_logicals,
    toy_zz_code,
)
from gaugewise.codes.report import TannerReport, tanner_report
from gaugewise.codes.stabilizer import CssCode, RowSpace, StabilizerCode

__all__ = [
    "BBCode",
    "CssCode",
    "LogicalKind",
    "LogicalPair",
    "Monomial",
    "RowSpace",
    "StabilizerCode",
    "TannerReport",
    "UpperBound",
    "bb_build",
    "bb_logical",
    "code_state",
    "css_from_dense",
    "distance_exact",
    "distance_upper",
    "double_gross_code",
    "format_monomial",
    "four_two_two",
    "gross_code",
    "logical_basis",
    "minimum_logical",
    "parse_monomial",
    "repetition_code",
    "rotated_surface_code",
    "surface_logicals",
    "tanner_report",
    "toy_zz_code",
]
