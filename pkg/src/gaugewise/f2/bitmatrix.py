"""F2 上的位压缩稠密矩阵与线性代数.

每一行按小端序打包进 64 位无符号整数字，行运算全部是整字异或。
主元选择规则固定为：最左列优先、同列取最小行号，保证所有下游构造逐位可复现。
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from gaugewise.errors import InvalidInputError, VerificationError

logger = logging.getLogger(__name__)

WORD_BITS = 64
_LE_WORD = np.dtype("<u8")

Bits = NDArray[np.uint8]
Words = NDArray[np.uint64]


def _word_count(cols: int) -> int:
    return (cols + WORD_BITS - 1) // WORD_BITS


def pack_bits(dense: Bits) -> Words:
    """把 (rows, cols) 的 0/1 数组打包成 (rows, words) 的 uint64 数组."""
    rows, cols = dense.shape
    nw = _word_count(cols)
    padded = np.zeros((rows, nw * WORD_BITS), dtype=np.uint8)
    padded[:, :cols] = dense & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(_LE_WORD).reshape(rows, nw).astype(np.uint64)


def unpack_bits(words: Words, cols: int) -> Bits:
    """pack_bits 的逆运算."""
    rows = words.shape[0]
    raw = np.ascontiguousarray(words.astype(_LE_WORD)).view(np.uint8)
    raw = raw.reshape(rows, words.shape[1] * 8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols].astype(np.uint8)


class BitMatrix:
    """F2 上的位压缩稠密矩阵（构造后不可变）."""

    __slots__ = ("_cols", "_rows", "_words")

    def __init__(self, rows: int, cols: int, words: Words | None = None) -> None:
        if rows < 0 or cols < 0:
            msg = f"矩阵尺寸非法: {rows}x{cols}"
            raise InvalidInputError(msg)
        shape = (rows, _word_count(cols))
        if words is None:
            data = np.zeros(shape, dtype=np.uint64)
        else:
            if words.shape != shape:
                msg = f"打包数据形状 {words.shape} 与 {rows}x{cols} 不符"
                raise InvalidInputError(msg)
            data = np.array(words, dtype=np.uint64, copy=True)
        data.setflags(write=False)
        self._rows = rows
        self._cols = cols
        self._words = data

    # ---- 构造 ----

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        """全零矩阵."""
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        """单位矩阵."""
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense: ArrayLike, cols: int | None = None) -> "BitMatrix":
        """从 0/1 二维数组构造."""
        arr = np.asarray(dense, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, cols or 0)
        if arr.ndim != 2:
            msg = f"需要二维数组，得到 {arr.ndim} 维"
            raise InvalidInputError(msg)
        bits = (arr & 1).astype(np.uint8)
        return cls(bits.shape[0], bits.shape[1], pack_bits(bits))

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], cols: int) -> "BitMatrix":
        """每行给出置 1 的列号（重复列号按 F2 相消）."""
        rows = [list(s) for s in supports]
        dense = np.zeros((len(rows), cols), dtype=np.uint8)
        for r, support in enumerate(rows):
            for c in support:
                if not 0 <= c < cols:
                    msg = f"列号 {c} 超出范围 [0, {cols})"
                    raise InvalidInputError(msg)
                dense[r, c] ^= 1
        return cls(len(rows), cols, pack_bits(dense))

    @classmethod
    def vstack(cls, mats: Sequence["BitMatrix"], cols: int | None = None) -> "BitMatrix":
        """纵向拼接."""
        if not mats:
            return cls(0, cols or 0)
        width = mats[0].cols
        if any(m.cols != width for m in mats):
            msg = "纵向拼接要求列数一致"
            raise InvalidInputError(msg)
        words = np.vstack([m.words for m in mats])
        return cls(words.shape[0], width, words)

    @classmethod
    def hstack(cls, mats: Sequence["BitMatrix"]) -> "BitMatrix":
        """横向拼接."""
        height = mats[0].rows
        if any(m.rows != height for m in mats):
            msg = "横向拼接要求行数一致"
            raise InvalidInputError(msg)
        return cls.from_dense(np.hstack([m.to_dense() for m in mats]))

    # ---- 访问 ----

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def words(self) -> Words:
        """只读的打包数据."""
        return self._words

    def __getitem__(self, key: tuple[int, int]) -> int:
        r, c = key
        if not (0 <= r < self._rows and 0 <= c < self._cols):
            msg = f"下标 ({r}, {c}) 超出 {self._rows}x{self._cols}"
            raise IndexError(msg)
        w, b = divmod(c, WORD_BITS)
        return int((int(self._words[r, w]) >> b) & 1)

    def to_dense(self) -> Bits:
        """解包为可写的 0/1 数组."""
        return unpack_bits(self._words, self._cols)

    def row(self, r: int) -> Bits:
        """第 r 行的 0/1 向量."""
        if not 0 <= r < self._rows:
            msg = f"行号 {r} 超出范围"
            raise IndexError(msg)
        return unpack_bits(self._words[r : r + 1], self._cols)[0]

    def row_support(self, r: int) -> list[int]:
        """第 r 行中为 1 的列号."""
        return [int(c) for c in np.flatnonzero(self.row(r))]

    def supports(self) -> list[list[int]]:
        """所有行的支撑集."""
        dense = self.to_dense()
        return [[int(c) for c in np.flatnonzero(line)] for line in dense]

    def row_weights(self) -> NDArray[np.int64]:
        """每行汉明重量."""
        if self._words.shape[1] == 0:
            return np.zeros(self._rows, dtype=np.int64)
        return np.bitwise_count(self._words).sum(axis=1).astype(np.int64)

    def is_zero(self) -> bool:
        return not bool(self._words.any())

    def __iter__(self) -> Iterator[Bits]:
        dense = self.to_dense()
        return iter(list(dense))

    # ---- 运算 ----

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self._cols != other.rows:
            msg = f"矩阵乘法尺寸不符: {self.shape} @ {other.shape}"
            raise InvalidInputError(msg)
        prod = self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)
        return BitMatrix.from_dense(prod & 1)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            msg = "矩阵加法尺寸不符"
            raise InvalidInputError(msg)
        return BitMatrix(self._rows, self._cols, self._words ^ other.words)

    def dot(self, vector: ArrayLike) -> Bits:
        """矩阵乘列向量 m·v."""
        v = np.asarray(vector, dtype=np.int64) & 1
        if v.shape != (self._cols,):
            msg = f"向量长度 {v.shape} 与列数 {self._cols} 不符"
            raise InvalidInputError(msg)
        return ((self.to_dense().astype(np.int64) @ v) & 1).astype(np.uint8)

    def select_rows(self, rows: Sequence[int]) -> "BitMatrix":
        idx = np.asarray(list(rows), dtype=np.int64)
        return BitMatrix(len(idx), self._cols, self._words[idx] if len(idx) else None)

    def select_cols(self, cols: Sequence[int]) -> "BitMatrix":
        idx = list(cols)
        return BitMatrix.from_dense(self.to_dense()[:, idx].reshape(self._rows, len(idx)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._words, other.words))

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self._rows}x{self._cols})"


class RowReduction(NamedTuple):
    """行约化结果：transform · m = rref."""

    rref: BitMatrix
    pivot_cols: tuple[int, ...]
    transform: BitMatrix


def eliminate_in_place(work: Words, cols: int, trans: Words | None = None) -> list[int]:
    """原地高斯-约当消元，返回主元列."""
    rows = work.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w, b = divmod(c, WORD_BITS)
        mask = np.uint64(1 << b)
        column = (work[:, w] & mask) != 0
        candidates = np.flatnonzero(column[r:])
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
            if trans is not None:
                trans[[r, p]] = trans[[p, r]]
            column[[r, p]] = column[[p, r]]
        column[r] = False
        hits = np.flatnonzero(column)
        if hits.size:
            work[hits] ^= work[r]
            if trans is not None:
                trans[hits] ^= trans[r]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: BitMatrix) -> int:
    """F2 行秩."""
    work = np.array(m.words, copy=True)
    return len(eliminate_in_place(work, m.cols))


def row_nullity(m: BitMatrix) -> int:
    """行零化度：行数减秩."""
    return m.rows - rank(m)


def row_reduce(m: BitMatrix) -> RowReduction:
    """约化行阶梯形，附带可逆变换矩阵."""
    work = np.array(m.words, copy=True)
    trans = pack_bits(np.eye(m.rows, dtype=np.uint8))
    pivots = eliminate_in_place(work, m.cols, trans)
    return RowReduction(
        rref=BitMatrix(m.rows, m.cols, work),
        pivot_cols=tuple(pivots),
        transform=BitMatrix(m.rows, m.rows, trans),
    )


def nullspace(m: BitMatrix) -> BitMatrix:
    """{v : m·vᵀ = 0} 的基，按 RREF 规范形返回."""
    work = np.array(m.words, copy=True)
    pivots = eliminate_in_place(work, m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = np.zeros((len(free), m.cols), dtype=np.uint8)
    if free:
        basis[np.arange(len(free)), free] = 1
        if pivots:
            reduced = unpack_bits(work[: len(pivots)], m.cols)
            basis[:, pivots] = reduced[:, free].T
    result = row_reduce(BitMatrix.from_dense(basis, cols=m.cols)).rref
    if result.rows and not (m @ result.T).is_zero():
        msg = "零空间基向量未通过校验"
        raise VerificationError(msg)
    return result


def left_nullspace(m: BitMatrix) -> BitMatrix:
    """{u : u·m = 0} 的基."""
    return nullspace(m.transpose())


def solve(a: BitMatrix, b: ArrayLike) -> Bits | None:
    """求 a·x = b 的一个解，无解返回 None."""
    rhs = np.asarray(b, dtype=np.int64) & 1
    if rhs.shape != (a.rows,):
        msg = f"右端向量长度 {rhs.shape} 与行数 {a.rows} 不符"
        raise InvalidInputError(msg)
    work = np.array(a.words, copy=True)
    trans = pack_bits(np.eye(a.rows, dtype=np.uint8))
    pivots = eliminate_in_place(work, a.cols, trans)
    moved = (unpack_bits(trans, a.rows).astype(np.int64) @ rhs) & 1
    r = len(pivots)
    if moved[r:].any():
        return None
    x = np.zeros(a.cols, dtype=np.uint8)
    if r:
        x[list(pivots)] = moved[:r]
    return x


def in_row_space(m: BitMatrix, vector: ArrayLike) -> bool:
    """判断向量是否属于 m 的行空间."""
    v = np.asarray(vector, dtype=np.uint8).reshape(1, -1)
    if m.rows == 0:
        return not v.any()
    stacked = BitMatrix.vstack([m, BitMatrix.from_dense(v)])
    return rank(stacked) == rank(m)
