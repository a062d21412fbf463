"""稳定子表（Aaronson–Gottesman 形式）.

2n 行：前 n 行为去稳定子，后 n 行为稳定子。第 i 个去稳定子只与第 i 个稳定子反对易。
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np
from numpy.typing import NDArray

from gaugewise.errors import (
    ContradictionError,
    EntangledQubitError,
    InvalidInputError,
    NonHermitianError,
    VerificationError,
)
from gaugewise.f2 import BitMatrix, left_nullspace, rank, row_reduce
from gaugewise.pauli.operator import Gate, PauliOp, conjugate_rows

logger = logging.getLogger(__name__)

InitState = Literal["0", "+"]


class MeasureResult(NamedTuple):
    """单次测量结果."""

    outcome: int
    deterministic: bool


@dataclass(frozen=True)
class CanonicalForm:
    """稳定子群的规范形：RREF 辛矩阵加每行符号."""

    matrix: BitMatrix
    signs: tuple[int, ...]


@dataclass
class Outcome:
    label: str | None
    value: int
    deterministic: bool = False


class Tableau:
    """n 比特稳定子态."""

    def __init__(self, n: int) -> None:
        if n < 0:
            msg = f"比特数非法: {n}"
            raise InvalidInputError(msg)
        self.n = n
        eye = np.eye(n, dtype=np.uint8)
        zero = np.zeros((n, n), dtype=np.uint8)
        # 初态 |0…0⟩：去稳定子 X_i，稳定子 Z_i
        self.xs: NDArray[np.uint8] = np.vstack([eye, zero])
        self.zs: NDArray[np.uint8] = np.vstack([zero, eye])
        self.phases: NDArray[np.int64] = np.zeros(2 * n, dtype=np.int64)
        self.outcomes: list[Outcome] = []

    # ---- 构造 ----

    @classmethod
    def zero_state(cls, n: int) -> "Tableau":
        return cls(n)

    @classmethod
    def plus_state(cls, n: int) -> "Tableau":
        t = cls(n)
        t.xs, t.zs = t.zs.copy(), t.xs.copy()
        return t

    @classmethod
    def from_stabilizers(cls, stabilizers: Sequence[PauliOp], n: int | None = None) -> "Tableau":
        """由 n 个独立、两两对易的厄米生成元构造态，并补全去稳定子."""
        size = n if n is not None else (stabilizers[0].n if stabilizers else 0)
        if len(stabilizers) != size:
            msg = f"需要 {size} 个生成元，得到 {len(stabilizers)}"
            raise InvalidInputError(msg)
        if size == 0:
            return cls(0)
        for s in stabilizers:
            if s.n != size:
                msg = "生成元比特数不一致"
                raise InvalidInputError(msg)
            if not s.is_hermitian:
                msg = f"生成元 {s} 不是厄米的"
                raise NonHermitianError(msg)
        sx = np.array([s.x for s in stabilizers], dtype=np.uint8)
        sz = np.array([s.z for s in stabilizers], dtype=np.uint8)
        gram = (sx.astype(np.int64) @ sz.T.astype(np.int64) + sz.astype(np.int64) @ sx.T.astype(np.int64)) & 1
        if gram.any():
            msg = "生成元之间不对易"
            raise InvalidInputError(msg)
        # A = [Sz | Sx]，求右逆 D 使 A·D = I
        a = BitMatrix.from_dense(np.hstack([sz, sx]))
        red = row_reduce(a)
        if len(red.pivot_cols) != size:
            msg = "生成元线性相关"
            raise InvalidInputError(msg)
        d = np.zeros((size, 2 * size), dtype=np.uint8)
        d[:, list(red.pivot_cols)] = red.transform.to_dense().T
        dx, dz = d[:, :size].copy(), d[:, size:].copy()
        # 辛 Gram–Schmidt：让去稳定子两两对易
        for i in range(size):
            inner = (dx[i + 1 :].astype(np.int64) @ dz[i].astype(np.int64)
                     + dz[i + 1 :].astype(np.int64) @ dx[i].astype(np.int64)) & 1
            hits = np.flatnonzero(inner) + i + 1
            if hits.size:
                dx[hits] ^= sx[i]
                dz[hits] ^= sz[i]
        t = cls(size)
        t.xs = np.vstack([dx, sx])
        t.zs = np.vstack([dz, sz])
        destab_phases = np.count_nonzero(dx & dz, axis=1).astype(np.int64)
        t.phases = np.concatenate([destab_phases, np.array([s.phase for s in stabilizers], dtype=np.int64)]) % 4
        return t

    def copy(self) -> "Tableau":
        t = Tableau.__new__(Tableau)
        t.n = self.n
        t.xs = self.xs.copy()
        t.zs = self.zs.copy()
        t.phases = self.phases.copy()
        t.outcomes = list(self.outcomes)
        return t

    # ---- 行操作 ----

    def _row(self, i: int) -> PauliOp:
        return PauliOp(self.xs[i], self.zs[i], int(self.phases[i]))

    def stabilizers(self) -> list[PauliOp]:
        return [self._row(self.n + i) for i in range(self.n)]

    def destabilizers(self) -> list[PauliOp]:
        return [self._row(i) for i in range(self.n)]

    def _rowmult(self, targets: NDArray[np.intp], source: int) -> None:
        """rows[targets] ← rows[targets] · rows[source]."""
        if targets.size == 0:
            return
        cross = self.zs[targets].astype(np.int64) @ self.xs[source].astype(np.int64)
        self.phases[targets] = (self.phases[targets] + self.phases[source] + 2 * cross) % 4
        self.xs[targets] ^= self.xs[source]
        self.zs[targets] ^= self.zs[source]

    def _anticommuting(self, p: PauliOp) -> NDArray[np.uint8]:
        form = self.xs.astype(np.int64) @ p.z.astype(np.int64) + self.zs.astype(np.int64) @ p.x.astype(np.int64)
        return (form & 1).astype(np.uint8)

    def _check(self, p: PauliOp) -> None:
        if p.n != self.n:
            msg = f"算符比特数 {p.n} 与态 {self.n} 不一致"
            raise InvalidInputError(msg)
        if not p.is_hermitian:
            msg = f"不能测量非厄米算符 {p}"
            raise NonHermitianError(msg)

    def _group_element(self, anti: NDArray[np.uint8]) -> PauliOp:
        """与去稳定子反对易模式对应的稳定子乘积."""
        acc = PauliOp.identity(self.n)
        for i in np.flatnonzero(anti[: self.n]):
            acc = acc * self._row(self.n + int(i))
        return acc

    # ---- 门与测量 ----

    def apply(self, gate: Gate) -> None:
        """作用 Clifford 门."""
        for q in gate.qubits:
            if not 0 <= q < self.n:
                msg = f"门 {gate.name} 的比特 {q} 越界"
                raise InvalidInputError(msg)
        conjugate_rows(self.xs, self.zs, self.phases, gate)

    apply_clifford = apply

    def apply_gates(self, gates: Sequence[Gate]) -> None:
        for gate in gates:
            self.apply(gate)

    def apply_pauli(self, p: PauliOp) -> None:
        """作用 Pauli 算符（只改变与其反对易的行的符号）."""
        if p.n != self.n:
            msg = "Pauli 比特数与态不一致"
            raise InvalidInputError(msg)
        anti = self._anticommuting(p)
        self.phases = (self.phases + 2 * anti.astype(np.int64)) % 4

    def peek(self, p: PauliOp) -> int:
        """不改变态地查询 p 的期望：确定时返回 ±1，随机时返回 0."""
        self._check(p)
        anti = self._anticommuting(p)
        if anti[self.n :].any():
            return 0
        acc = self._group_element(anti)
        return 1 if (acc.phase - p.phase) % 4 == 0 else -1

    def measure(
        self,
        p: PauliOp,
        *,
        rng: np.random.Generator | None = None,
        forced: int | None = None,
        label: str | None = None,
    ) -> MeasureResult:
        """测量厄米 Pauli 算符 p.

        随机结果由 rng 采样或由 forced 指定；确定结果与 forced 冲突时抛出 ContradictionError。
        """
        self._check(p)
        if forced not in (None, 1, -1):
            msg = f"forced 只能是 ±1，得到 {forced}"
            raise InvalidInputError(msg)
        anti = self._anticommuting(p)
        stab_anti = np.flatnonzero(anti[self.n :])
        if stab_anti.size:
            k = self.n + int(stab_anti[0])
            if forced is not None:
                outcome = forced
            elif rng is not None:
                outcome = 1 if int(rng.integers(2)) == 0 else -1
            else:
                msg = f"测量 {label or p} 结果随机，需要 rng 或 forced"
                raise InvalidInputError(msg)
            others = np.array([h for h in np.flatnonzero(anti) if h != k], dtype=np.intp)
            self._rowmult(others, k)
            self.xs[k - self.n] = self.xs[k]
            self.zs[k - self.n] = self.zs[k]
            self.phases[k - self.n] = self.phases[k]
            self.xs[k] = p.x
            self.zs[k] = p.z
            self.phases[k] = (p.phase + (0 if outcome == 1 else 2)) % 4
            result = MeasureResult(outcome, False)
        else:
            acc = self._group_element(anti)
            outcome = 1 if (acc.phase - p.phase) % 4 == 0 else -1
            if forced is not None and forced != outcome:
                msg = f"测量 {label or p} 的结果确定为 {outcome:+d}，不能强制为 {forced:+d}"
                raise ContradictionError(msg)
            result = MeasureResult(outcome, True)
        self.outcomes.append(Outcome(label, result.outcome, result.deterministic))
        return result

    # ---- 比特增删 ----

    def extend(self, count: int, state: InitState = "0") -> list[int]:
        """在末尾追加 count 个处于 |0⟩ 或 |+⟩ 的新比特，返回其下标."""
        if state not in ("0", "+"):
            msg = f"未知初态: {state}"
            raise InvalidInputError(msg)
        n, m = self.n, self.n + count
        xs = np.zeros((2 * m, m), dtype=np.uint8)
        zs = np.zeros((2 * m, m), dtype=np.uint8)
        phases = np.zeros(2 * m, dtype=np.int64)
        xs[:n, :n], zs[:n, :n], phases[:n] = self.xs[:n], self.zs[:n], self.phases[:n]
        xs[m : m + n, :n], zs[m : m + n, :n] = self.xs[n:], self.zs[n:]
        phases[m : m + n] = self.phases[n:]
        new = list(range(n, m))
        for q in new:
            stab, destab = (zs, xs) if state == "0" else (xs, zs)
            stab[m + q, q] = 1
            destab[q, q] = 1
        self.n, self.xs, self.zs, self.phases = m, xs, zs, phases
        return new

    def discard(self, qubits: Sequence[int]) -> None:
        """删除与其余比特无纠缠的比特."""
        drop = sorted(set(qubits))
        for q in drop:
            if not 0 <= q < self.n:
                msg = f"比特 {q} 越界"
                raise InvalidInputError(msg)
            local = [PauliOp.from_support(self.n, xq, zq) for xq, zq in (([], [q]), ([q], []), ([q], [q]))]
            if all(self.peek(op) == 0 for op in local):
                msg = f"比特 {q} 与其余比特纠缠，不能丢弃"
                raise EntangledQubitError(msg)
        keep = [q for q in range(self.n) if q not in set(drop)]
        stabs = self.stabilizers()
        on_drop = np.hstack([self.xs[self.n :, drop], self.zs[self.n :, drop]])
        combos = left_nullspace(BitMatrix.from_dense(on_drop, cols=2 * len(drop)))
        kept: list[PauliOp] = []
        for u in combos.to_dense():
            acc = PauliOp.identity(self.n)
            for i in np.flatnonzero(u):
                acc = acc * stabs[int(i)]
            kept.append(acc.restricted(keep))
        outcomes = self.outcomes
        rebuilt = Tableau.from_stabilizers(kept, n=len(keep))
        self.n, self.xs, self.zs, self.phases = rebuilt.n, rebuilt.xs, rebuilt.zs, rebuilt.phases
        self.outcomes = outcomes
        logger.debug(f"丢弃比特 {drop}，剩余 {self.n} 个")

    # ---- 比较与校验 ----

    def canonical(self) -> CanonicalForm:
        """稳定子群的规范形，同一群的任意生成元集合得到相同结果."""
        stabs = self.stabilizers()
        sym = BitMatrix.from_dense(
            np.hstack([self.xs[self.n :], self.zs[self.n :]]), cols=2 * self.n
        )
        red = row_reduce(sym)
        signs: list[int] = []
        for row in red.transform.to_dense():
            acc = PauliOp.identity(self.n)
            for j in np.flatnonzero(row):
                acc = acc * stabs[int(j)]
            signs.append(acc.sign)
        return CanonicalForm(red.rref, tuple(signs))

    def stabilizes(self, p: PauliOp) -> bool:
        """p（带符号）是否属于稳定子群."""
        return self.peek(p) == 1

    def validate(self) -> None:
        """检查表的对易结构."""
        n = self.n
        x = self.xs.astype(np.int64)
        z = self.zs.astype(np.int64)
        gram = (x @ z.T + z @ x.T) & 1
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        expected[:n, n:] = np.eye(n, dtype=np.int64)
        expected[n:, :n] = np.eye(n, dtype=np.int64)
        if not np.array_equal(gram, expected):
            msg = "稳定子表的对易结构被破坏"
            raise VerificationError(msg)
        sym = BitMatrix.from_dense(np.hstack([self.xs[n:], self.zs[n:]]), cols=2 * n)
        if rank(sym) != n:
            msg = "稳定子不独立"
            raise VerificationError(msg)
