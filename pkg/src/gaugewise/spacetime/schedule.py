"""容错测量的时间线与故障位置.

整数时刻 t 上发生 Pauli 故障，测量发生在 t+½。形变码在 t_i+½ 到 t_o−½ 之间测量，
边比特在 t_i−½ 初始化为 |0⟩，在 t_o+½ 按 Z 基读出。第一轮与最后一轮原码测量视为无错。
"""

from dataclasses import dataclass
from typing import Literal

from gaugewise.errors import InvalidInputError

FluxCadence = Literal["every_round", "endpoints"]
FaultKind = Literal["pauli", "measurement", "init", "readout"]
Phase = Literal["before", "t_i", "bulk", "t_o", "after"]


@dataclass(frozen=True)
class Schedule:
    """测量时间表：前后各若干轮原码测量，中间 t_o − t_i 轮形变码测量."""

    t_i: int
    t_o: int
    pre_rounds: int = 1
    post_rounds: int = 1
    flux_cadence: FluxCadence = "every_round"

    def __post_init__(self) -> None:
        if self.t_o <= self.t_i:
            msg = f"要求 t_o > t_i，得到 t_i={self.t_i}, t_o={self.t_o}"
            raise InvalidInputError(msg)
        if self.pre_rounds < 1 or self.post_rounds < 1:
            msg = "形变前后的原码测量轮数至少为 1"
            raise InvalidInputError(msg)
        if self.flux_cadence not in ("every_round", "endpoints"):
            msg = f"未知通量测量节奏: {self.flux_cadence}"
            raise InvalidInputError(msg)

    @classmethod
    def symmetric(cls, rounds: int, flux_cadence: FluxCadence = "every_round") -> "Schedule":
        """原码、形变码、原码各测量 rounds 轮."""
        return cls(rounds, 2 * rounds, rounds, rounds, flux_cadence)

    @property
    def t_first(self) -> int:
        return self.t_i - self.pre_rounds

    @property
    def t_last(self) -> int:
        return self.t_o + self.post_rounds - 1

    @property
    def deformed_rounds(self) -> int:
        return self.t_o - self.t_i

    def is_deformed_round(self, t: int) -> bool:
        """t+½ 处的测量是否属于形变码."""
        return self.t_i <= t < self.t_o

    def is_perfect_round(self, t: int) -> bool:
        return t in (self.t_first, self.t_last)

    def rounds(self) -> range:
        return range(self.t_first, self.t_last + 1)


@dataclass(frozen=True, order=True)
class FaultSite:
    """单个故障.

    pauli: 时刻 t 作用在 qubit 上的 Pauli；measurement: t+½ 处检查 label 的结果翻转；
    init: 边比特 qubit 在 t_i−½ 被初始化为 |1⟩；readout: 边比特 qubit 在 t_o+½ 的读出翻转。
    """

    kind: FaultKind
    t: int
    qubit: int = -1
    pauli: str = ""
    label: str = ""

    @property
    def time(self) -> float:
        return float(self.t) if self.kind == "pauli" else self.t + 0.5

    def __str__(self) -> str:
        if self.kind == "pauli":
            return f"{self.pauli}{self.qubit}@{self.t}"
        if self.kind == "measurement":
            return f"M[{self.label}]@{self.time}"
        return f"{self.kind}[{self.qubit}]@{self.time}"


def pauli_fault(qubit: int, pauli: str, t: int) -> FaultSite:
    if pauli not in ("X", "Y", "Z"):
        msg = f"非法 Pauli 故障: {pauli}"
        raise InvalidInputError(msg)
    return FaultSite("pauli", t, qubit=qubit, pauli=pauli)


def measurement_fault(label: str, t: int) -> FaultSite:
    """t+½ 处检查 label 的测量错误."""
    return FaultSite("measurement", t, label=label)
