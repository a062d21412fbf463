"""常用码的构造."""

import numpy as np

from gaugewise.codes.bb import BBCode, Monomial, bb_build
from gaugewise.codes.stabilizer import CssCode
from gaugewise.errors import InvalidInputError
from gaugewise.f2 import BitMatrix
from gaugewise.pauli import PauliOp

# 逻辑算符多项式表
GROSS_F: list[Monomial] = [
    (0, 0), (1, 0), (2, 0), (3, 0), (6, 0), (7, 0), (8, 0), (9, 0),
    (1, 3), (5, 3), (7, 3), (11, 3),
]  # fmt: skip
GROSS_G: list[Monomial] = [(1, 0), (2, 1), (0, 2), (1, 2), (2, 3), (0, 4)]
GROSS_H: list[Monomial] = [(0, 0), (0, 1), (1, 1), (0, 2), (0, 3), (1, 3)]

DOUBLE_GROSS_F: list[Monomial] = [
    (0, 0), (1, 0), (2, 0), (7, 0), (8, 0), (9, 0), (10, 0), (11, 0),
    (0, 3), (6, 3), (8, 3), (10, 3),
    (5, 6), (6, 6), (9, 6), (10, 6),
    (4, 9), (8, 9),
]  # fmt: skip


def gross_code() -> BBCode:
    """[[144,12,12]] gross 码：A = x³+y²+y，B = y³+x²+x."""
    return bb_build(
        12,
        6,
        a=[(3, 0), (0, 2), (0, 1)],
        b=[(0, 3), (2, 0), (1, 0)],
        name="gross",
        tables={"f": GROSS_F, "g": GROSS_G, "h": GROSS_H},
    )


def double_gross_code() -> BBCode:
    """[[288,12,18]] double gross 码：A = x³+y⁷+y²，B = y³+x²+x."""
    return bb_build(
        12,
        12,
        a=[(3, 0), (0, 7), (0, 2)],
        b=[(0, 3), (2, 0), (1, 0)],
        name="double-gross",
        tables={"f": DOUBLE_GROSS_F},
    )


def four_two_two() -> CssCode:
    """[[4,2,2]] 码 {XXXX, ZZZZ}."""
    row = BitMatrix.from_dense([[1, 1, 1, 1]])
    return CssCode(row, row, name="[[4,2,2]]")


def repetition_code(n: int) -> CssCode:
    """比特翻转重复码：检查 Z_i Z_{i+1}."""
    if n < 2:
        msg = f"重复码长度至少为 2，得到 {n}"
        raise InvalidInputError(msg)
    hz = BitMatrix.from_supports([[i, i + 1] for i in range(n - 1)], n)
    return CssCode(BitMatrix(0, n), hz, name=f"repetition-{n}")


def toy_zz_code() -> CssCode:
    """两比特玩具码 {ZZ}."""
    return repetition_code(2)


def rotated_surface_code(d: int) -> CssCode:
    """旋转平面码 [[d², 1, d]]，比特 (r, c) 编号 r·d + c.

    上下边界为 X 型权重 2 检查，左右边界为 Z 型。
    """
    if d < 2:
        msg = f"码距至少为 2，得到 {d}"
        raise InvalidInputError(msg)
    x_rows: list[list[int]] = []
    z_rows: list[list[int]] = []
    for i in range(d + 1):
        for j in range(d + 1):
            support = [
                r * d + c
                for r, c in ((i - 1, j - 1), (i - 1, j), (i, j - 1), (i, j))
                if 0 <= r < d and 0 <= c < d
            ]
            is_x = (i + j) % 2 == 0
            bulk = 0 < i < d and 0 < j < d
            if bulk:
                (x_rows if is_x else z_rows).append(support)
            elif len(support) == 2 and (i in (0, d)) and is_x:
                x_rows.append(support)
            elif len(support) == 2 and (j in (0, d)) and not is_x:
                z_rows.append(support)
    n = d * d
    return CssCode(BitMatrix.from_supports(x_rows, n), BitMatrix.from_supports(z_rows, n), name=f"surface-{d}")


def surface_logicals(d: int) -> tuple[PauliOp, PauliOp]:
    """旋转平面码的 (X̄, Z̄)：X̄ 沿第 0 列，Z̄ 沿第 0 行."""
    n = d * d
    return (
        PauliOp.x_type(n, [r * d for r in range(d)]),
        PauliOp.z_type(n, list(range(d))),
    )


def css_from_dense(hx: list[list[int]], hz: list[list[int]], name: str = "css") -> CssCode:
    """由稠密 0/1 列表构造 CSS 码."""
    n = len(hx[0]) if hx else len(hz[0])
    return CssCode(
        BitMatrix.from_dense(np.array(hx, dtype=np.uint8).reshape(len(hx), n)),
        BitMatrix.from_dense(np.array(hz, dtype=np.uint8).reshape(len(hz), n)),
        name=name,
    )
