"""F2 线性代数."""

from gaugewise.f2.bitmatrix import (
    BitMatrix,
    RowReduction,
    eliminate_in_place,
    in_row_space,
    left_nullspace,
    nullspace,
    pack_bits,
    rank,
    row_nullity,
    row_reduce,
    solve,
    unpack_bits,
)
from gaugewise.f2.textio import (
    format_text_matrix,
    parse_text_matrix,
    read_text_matrix,
    write_text_matrix,
)

__all__ = [
    "BitMatrix",
    "RowReduction",
    "eliminate_in_place",
    "format_text_matrix",
    "in_row_space",
    "left_nullspace",
    "nullspace",
    "pack_bits",
    "parse_text_matrix",
    "rank",
    "read_text_matrix",
    "row_nullity",
    "row_reduce",
    "solve",
    "unpack_bits",
    "write_text_matrix",
]
