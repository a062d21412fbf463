"""稳定子码与 CSS 码容器."""

import logging
from collections.abc import Iterable, Sequence
from functools import cached_property

import numpy as np

from gaugewise.errors import CommutationError, InvalidInputError
from gaugewise.f2 import BitMatrix, in_row_space, rank
from gaugewise.pauli import Gate, PauliOp

logger = logging.getLogger(__name__)


class RowSpace:
    """用 Python 整数位集维护的 F2 行空间，支持增量插入与成员判定."""

    def __init__(self, rows: Iterable[int] = ()) -> None:
        self.pivots: dict[int, int] = {}
        for row in rows:
            self.add(row)

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            basis = self.pivots.get(top)
            if basis is None:
                return v
            v ^= basis
        return 0

    def add(self, v: int) -> bool:
        """插入向量，线性无关时返回 True."""
        v = self.reduce(v)
        if not v:
            return False
        self.pivots[v.bit_length() - 1] = v
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.pivots)


def bits_to_int(bits: Iterable[int]) -> int:
    """0/1 序列转整数位集（第 i 位对应下标 i）."""
    value = 0
    for i, b in enumerate(bits):
        if b:
            value |= 1 << i
    return value


def int_to_bits(value: int, length: int) -> np.ndarray:
    return np.array([(value >> i) & 1 for i in range(length)], dtype=np.uint8)


class StabilizerCode:
    """由两两对易的厄米 Pauli 检查算符定义的稳定子码."""

    def __init__(
        self,
        n: int,
        checks: Sequence[PauliOp],
        labels: Sequence[str] | None = None,
        name: str = "stabilizer",
    ) -> None:
        self.n = n
        self.checks = list(checks)
        self.labels = list(labels) if labels is not None else [f"s{i}" for i in range(len(self.checks))]
        self.name = name
        if len(self.labels) != len(self.checks):
            msg = f"标签数 {len(self.labels)} 与检查算符数 {len(self.checks)} 不一致"
            raise InvalidInputError(msg)
        if len(set(self.labels)) != len(self.labels):
            msg = "检查算符标签重复"
            raise InvalidInputError(msg)
        for label, check in zip(self.labels, self.checks, strict=True):
            if check.n != n:
                msg = f"检查算符 {label} 作用于 {check.n} 个比特，码长为 {n}"
                raise InvalidInputError(msg)
            if not check.is_hermitian:
                msg = f"检查算符 {label} 不是厄米的"
                raise InvalidInputError(msg)
        self._check_commutation()

    def _check_commutation(self) -> None:
        sym = self.symplectic.to_dense().astype(np.int64)
        x, z = sym[:, : self.n], sym[:, self.n :]
        gram = (x @ z.T + z @ x.T) & 1
        bad = np.argwhere(np.triu(gram))
        if bad.size:
            i, j = (int(v) for v in bad[0])
            msg = f"检查算符 {self.labels[i]} 与 {self.labels[j]} 不对易"
            raise CommutationError(msg)

    @cached_property
    def symplectic(self) -> BitMatrix:
        """检查矩阵 [x|z]."""
        if not self.checks:
            return BitMatrix(0, 2 * self.n)
        return BitMatrix.from_dense(np.array([c.symplectic() for c in self.checks]), cols=2 * self.n)

    @cached_property
    def rank(self) -> int:
        return rank(self.symplectic)

    @property
    def k(self) -> int:
        """逻辑比特数."""
        return self.n - self.rank

    @cached_property
    def row_space(self) -> RowSpace:
        return RowSpace(bits_to_int(c.symplectic()) for c in self.checks)

    @property
    def is_css(self) -> bool:
        return all(c.is_x_type or c.is_z_type for c in self.checks)

    def check(self, label: str) -> PauliOp:
        return self.checks[self.labels.index(label)]

    def anticommuting_checks(self, op: PauliOp) -> list[int]:
        """与 op 反对易的检查算符下标."""
        return [i for i, c in enumerate(self.checks) if not c.commutes(op)]

    def commutes_with_all(self, op: PauliOp) -> bool:
        return not self.anticommuting_checks(op)

    def in_check_group(self, op: PauliOp) -> bool:
        """op（忽略符号）是否属于检查算符生成的群."""
        return bits_to_int(op.symplectic()) in self.row_space

    def is_logical(self, op: PauliOp) -> bool:
        """op 与所有检查对易且不在稳定子群中."""
        return self.commutes_with_all(op) and not self.in_check_group(op)

    def independent_checks(self) -> list[int]:
        """按顺序贪心选出的一组独立检查算符下标."""
        space = RowSpace()
        return [i for i, c in enumerate(self.checks) if space.add(bits_to_int(c.symplectic()))]

    def conjugated(self, gates: Sequence[Gate]) -> "StabilizerCode":
        """所有检查算符经 Clifford 门共轭后的码."""
        return StabilizerCode(self.n, [c.conjugated(gates) for c in self.checks], self.labels, self.name)

    def as_css(self) -> "CssCode | None":
        """若检查算符都是纯 X 或纯 Z 型，返回等价的 CssCode."""
        if not self.is_css:
            return None
        xs = [(lab, c) for lab, c in zip(self.labels, self.checks, strict=True) if c.is_x_type and c.weight]
        zs = [(lab, c) for lab, c in zip(self.labels, self.checks, strict=True) if c.is_z_type and not c.is_x_type]
        hx = BitMatrix.from_dense(np.array([c.x for _, c in xs]).reshape(len(xs), self.n), cols=self.n)
        hz = BitMatrix.from_dense(np.array([c.z for _, c in zs]).reshape(len(zs), self.n), cols=self.n)
        return CssCode(hx, hz, x_labels=[lab for lab, _ in xs], z_labels=[lab for lab, _ in zs], name=self.name)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, n={self.n}, checks={len(self.checks)})"


class CssCode(StabilizerCode):
    """CSS 码：X 型检查矩阵 hx 与 Z 型检查矩阵 hz."""

    def __init__(
        self,
        hx: BitMatrix,
        hz: BitMatrix,
        x_labels: Sequence[str] | None = None,
        z_labels: Sequence[str] | None = None,
        name: str = "css",
    ) -> None:
        if hx.cols != hz.cols:
            msg = f"hx 与 hz 列数不一致: {hx.cols} != {hz.cols}"
            raise InvalidInputError(msg)
        if not (hx @ hz.T).is_zero():
            msg = "hx · hzᵀ ≠ 0，X 与 Z 检查不对易"
            raise CommutationError(msg)
        n = hx.cols
        self.hx = hx
        self.hz = hz
        xl = list(x_labels) if x_labels is not None else [f"X{i}" for i in range(hx.rows)]
        zl = list(z_labels) if z_labels is not None else [f"Z{i}" for i in range(hz.rows)]
        checks = [PauliOp.x_type(n, s) for s in hx.supports()] + [PauliOp.z_type(n, s) for s in hz.supports()]
        # 对易性已由 hx·hzᵀ = 0 保证
        self.n = n
        self.checks = checks
        self.labels = xl + zl
        self.name = name
        if len(self.labels) != len(checks) or len(set(self.labels)) != len(checks):
            msg = "CSS 检查标签数量不符或重复"
            raise InvalidInputError(msg)

    @cached_property
    def rank(self) -> int:
        return rank(self.hx) + rank(self.hz)

    @property
    def x_labels(self) -> list[str]:
        return self.labels[: self.hx.rows]

    @property
    def z_labels(self) -> list[str]:
        return self.labels[self.hx.rows :]

    def in_x_row_space(self, bits: np.ndarray) -> bool:
        return in_row_space(self.hx, bits)

    def in_z_row_space(self, bits: np.ndarray) -> bool:
        return in_row_space(self.hz, bits)
