"""n 比特 Pauli 算符与 Clifford 门共轭规则.

约定 P = i^phase · X^x · Z^z，phase 取模 4。
厄米算符的符号为 i^(phase - |x∧z|)，只可能是 ±1。
"""

from collections.abc import Iterable, Sequence
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from gaugewise.errors import InvalidInputError, NonHermitianError

Bits = NDArray[np.uint8]

_PREFIXES = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
GATE_NAMES = ("H", "S", "SDG", "X", "Y", "Z", "CX")


class Gate(NamedTuple):
    """Clifford 门：名称与作用的比特."""

    name: str
    qubits: tuple[int, ...]


def conjugate_rows(
    xs: NDArray[np.uint8],
    zs: NDArray[np.uint8],
    phases: NDArray[np.int64],
    gate: Gate,
) -> None:
    """原地把每一行 Pauli 替换为 U·P·U†."""
    name, qs = gate
    if name == "H":
        (q,) = qs
        x = xs[:, q].copy()
        z = zs[:, q].copy()
        phases += 2 * (x & z)
        xs[:, q] = z
        zs[:, q] = x
    elif name == "S":
        (q,) = qs
        phases += xs[:, q]
        zs[:, q] ^= xs[:, q]
    elif name == "SDG":
        for _ in range(3):
            conjugate_rows(xs, zs, phases, Gate("S", qs))
    elif name == "X":
        (q,) = qs
        phases += 2 * zs[:, q]
    elif name == "Z":
        (q,) = qs
        phases += 2 * xs[:, q]
    elif name == "Y":
        (q,) = qs
        phases += 2 * (xs[:, q] ^ zs[:, q])
    elif name == "CX":
        c, t = qs
        if c == t:
            msg = "CX 的控制位与目标位不能相同"
            raise InvalidInputError(msg)
        xs[:, t] ^= xs[:, c]
        zs[:, c] ^= zs[:, t]
    else:
        msg = f"未知门: {name}"
        raise InvalidInputError(msg)
    phases %= 4


class PauliOp:
    """带相位的 n 比特 Pauli 算符（不可变）."""

    __slots__ = ("_phase", "_x", "_z")

    def __init__(self, x: ArrayLike, z: ArrayLike, phase: int = 0) -> None:
        xa = (np.asarray(x, dtype=np.int64) & 1).astype(np.uint8).reshape(-1)
        za = (np.asarray(z, dtype=np.int64) & 1).astype(np.uint8).reshape(-1)
        if xa.shape != za.shape:
            msg = f"x 与 z 长度不一致: {xa.size} != {za.size}"
            raise InvalidInputError(msg)
        xa.setflags(write=False)
        za.setflags(write=False)
        self._x = xa
        self._z = za
        self._phase = int(phase) % 4

    # ---- 构造 ----

    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_support(
        cls,
        n: int,
        x_support: Iterable[int] = (),
        z_support: Iterable[int] = (),
        sign: int = 1,
    ) -> "PauliOp":
        """按支撑集构造厄米算符，x 与 z 重叠处为 Y."""
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for q in x_support:
            _check_qubit(q, n)
            x[q] ^= 1
        for q in z_support:
            _check_qubit(q, n)
            z[q] ^= 1
        base = int(np.count_nonzero(x & z))
        return cls(x, z, base + (0 if sign == 1 else 2))

    @classmethod
    def x_type(cls, n: int, support: Iterable[int]) -> "PauliOp":
        return cls.from_support(n, x_support=support)

    @classmethod
    def z_type(cls, n: int, support: Iterable[int]) -> "PauliOp":
        return cls.from_support(n, z_support=support)

    @classmethod
    def from_string(cls, text: str) -> "PauliOp":
        """解析 "+XIZY"、"-ZZ"、"iX" 之类的字符串."""
        body = text.strip()
        split = len(body) - len(body.lstrip("+-i"))
        prefix, letters = body[:split], body[split:]
        if prefix not in _PREFIXES:
            msg = f"无法解析的相位前缀: {prefix!r}"
            raise InvalidInputError(msg)
        n = len(letters)
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for q, ch in enumerate(letters.upper()):
            if ch not in "IXYZ":
                msg = f"非法 Pauli 字符: {ch!r}"
                raise InvalidInputError(msg)
            x[q] = ch in "XY"
            z[q] = ch in "ZY"
        return cls(x, z, _PREFIXES[prefix] + int(np.count_nonzero(x & z)))

    @classmethod
    def from_symplectic(cls, vector: ArrayLike, sign: int = 1) -> "PauliOp":
        """从 [x|z] 向量构造厄米算符."""
        v = np.asarray(vector, dtype=np.uint8).reshape(-1)
        if v.size % 2:
            msg = "辛向量长度必须为偶数"
            raise InvalidInputError(msg)
        n = v.size // 2
        x, z = v[:n], v[n:]
        return cls(x, z, int(np.count_nonzero(x & z)) + (0 if sign == 1 else 2))

    # ---- 属性 ----

    @property
    def n(self) -> int:
        return int(self._x.size)

    @property
    def x(self) -> Bits:
        return self._x

    @property
    def z(self) -> Bits:
        return self._z

    @property
    def phase(self) -> int:
        return self._phase

    def _sign_exponent(self) -> int:
        return (self._phase - int(np.count_nonzero(self._x & self._z))) % 4

    @property
    def is_hermitian(self) -> bool:
        return self._sign_exponent() % 2 == 0

    @property
    def sign(self) -> int:
        """厄米算符的符号 ±1."""
        e = self._sign_exponent()
        if e % 2:
            msg = f"算符 {self} 不是厄米的"
            raise NonHermitianError(msg)
        return 1 if e == 0 else -1

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self._x | self._z))

    @property
    def support(self) -> list[int]:
        return [int(q) for q in np.flatnonzero(self._x | self._z)]

    @property
    def is_x_type(self) -> bool:
        return not self._z.any()

    @property
    def is_z_type(self) -> bool:
        return not self._x.any()

    def symplectic(self) -> Bits:
        """[x|z] 向量."""
        return np.concatenate([self._x, self._z])

    # ---- 代数 ----

    def _check_same_size(self, other: "PauliOp") -> None:
        if other.n != self.n:
            msg = f"比特数不一致: {self.n} != {other.n}"
            raise InvalidInputError(msg)

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        self._check_same_size(other)
        cross = int(np.dot(self._z.astype(np.int64), other.x.astype(np.int64)))
        return PauliOp(
            self._x ^ other.x,
            self._z ^ other.z,
            self._phase + other.phase + 2 * cross,
        )

    def commutes(self, other: "PauliOp") -> bool:
        self._check_same_size(other)
        form = np.dot(self._x.astype(np.int64), other.z.astype(np.int64)) + np.dot(
            self._z.astype(np.int64), other.x.astype(np.int64)
        )
        return int(form) % 2 == 0

    def with_sign(self, sign: int) -> "PauliOp":
        """返回同一 Pauli 串但符号为 sign 的厄米算符."""
        base = int(np.count_nonzero(self._x & self._z))
        return PauliOp(self._x, self._z, base + (0 if sign == 1 else 2))

    def __neg__(self) -> "PauliOp":
        return PauliOp(self._x, self._z, self._phase + 2)

    def conjugated(self, gates: Gate | Sequence[Gate]) -> "PauliOp":
        """U·P·U†，门按给定顺序依次作用."""
        seq = [gates] if isinstance(gates, Gate) else list(gates)
        xs = self._x.reshape(1, -1).copy()
        zs = self._z.reshape(1, -1).copy()
        phases = np.array([self._phase], dtype=np.int64)
        for gate in seq:
            for q in gate.qubits:
                _check_qubit(q, self.n)
            conjugate_rows(xs, zs, phases, gate)
        return PauliOp(xs[0], zs[0], int(phases[0]))

    def extended(self, extra: int) -> "PauliOp":
        """在末尾追加 extra 个恒等比特."""
        pad = np.zeros(extra, dtype=np.uint8)
        return PauliOp(
            np.concatenate([self._x, pad]), np.concatenate([self._z, pad]), self._phase
        )

    def restricted(self, qubits: Sequence[int]) -> "PauliOp":
        """只保留给定比特（被删比特上的 Y 按 i 相位计入）."""
        idx = list(qubits)
        dropped = np.ones(self.n, dtype=bool)
        dropped[idx] = False
        lost_y = int(np.count_nonzero((self._x & self._z)[dropped]))
        return PauliOp(self._x[idx], self._z[idx], self._phase - lost_y)

    def embedded(self, n: int, qubits: Sequence[int]) -> "PauliOp":
        """把本算符放到 n 比特系统的 qubits 位置上."""
        if len(qubits) != self.n:
            msg = "嵌入位置数与比特数不一致"
            raise InvalidInputError(msg)
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        x[list(qubits)] = self._x
        z[list(qubits)] = self._z
        return PauliOp(x, z, self._phase)

    # ---- 表示 ----

    def letters(self) -> str:
        table = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
        return "".join(table[(int(a), int(b))] for a, b in zip(self._x, self._z, strict=True))

    def __str__(self) -> str:
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self._sign_exponent()]
        return prefix + self.letters()

    def __repr__(self) -> str:
        return f"PauliOp({self})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOp):
            return NotImplemented
        return (
            self._phase == other.phase
            and bool(np.array_equal(self._x, other.x))
            and bool(np.array_equal(self._z, other.z))
        )

    def __hash__(self) -> int:
        return hash((self._phase, self._x.tobytes(), self._z.tobytes()))


def _check_qubit(q: int, n: int) -> None:
    if not 0 <= q < n:
        msg = f"比特下标 {q} 超出范围 [0, {n})"
        raise InvalidInputError(msg)


def product(ops: Iterable[PauliOp], n: int) -> PauliOp:
    """按顺序求乘积（空乘积为恒等）."""
    acc = PauliOp.identity(n)
    for op in ops:
        acc = acc * op
    return acc
