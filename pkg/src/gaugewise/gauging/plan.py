"""规范化测量方案：逻辑算符、辅助图、通量环与形变路径."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any

import numpy as np
from pydantic import BaseModel, Field

from gaugewise.codes import StabilizerCode
from gaugewise.errors import CommutationError, CompatibilityError, InvalidInputError, PlanError
from gaugewise.f2 import BitMatrix
from gaugewise.gauging.graph import GaugingGraph
from gaugewise.pauli import Gate, PauliOp, Tableau

logger = logging.getLogger(__name__)

_TO_X = {"X": None, "Z": "H", "Y": "SDG"}
_INVERSE = {"H": "H", "SDG": "S", "S": "SDG"}


@dataclass(frozen=True)
class BasisChange:
    """逐比特单比特 Clifford，使逻辑算符变为纯 X 型."""

    gates: tuple[Gate, ...] = ()

    @classmethod
    def for_logical(cls, logical: PauliOp) -> "BasisChange":
        letters = logical.letters()
        gates = [Gate(name, (q,)) for q, ch in enumerate(letters) if ch != "I" and (name := _TO_X[ch]) is not None]
        return cls(tuple(gates))

    @property
    def is_identity(self) -> bool:
        return not self.gates

    @property
    def inverse_gates(self) -> tuple[Gate, ...]:
        return tuple(Gate(_INVERSE[g.name], g.qubits) for g in self.gates)

    def apply_op(self, op: PauliOp) -> PauliOp:
        return op.conjugated(self.gates) if self.gates else op

    def undo_op(self, op: PauliOp) -> PauliOp:
        return op.conjugated(self.inverse_gates) if self.gates else op

    def apply_code(self, code: StabilizerCode) -> StabilizerCode:
        return code.conjugated(self.gates) if self.gates else code

    def undo_code(self, code: StabilizerCode) -> StabilizerCode:
        return code.conjugated(self.inverse_gates) if self.gates else code

    def apply_tableau(self, t: Tableau) -> None:
        t.apply_gates(self.gates)

    def undo_tableau(self, t: Tableau) -> None:
        t.apply_gates(self.inverse_gates)

    def merged(self, other: "BasisChange") -> "BasisChange":
        """合并两个作用于不同比特（或在公共比特上一致）的基变换."""
        table = {g.qubits: g for g in self.gates}
        for g in other.gates:
            if g.qubits in table and table[g.qubits] != g:
                msg = f"比特 {g.qubits[0]} 上的基变换冲突"
                raise InvalidInputError(msg)
            table[g.qubits] = g
        return BasisChange(tuple(table[k] for k in sorted(table)))


def basis_change_to_x(code: StabilizerCode, logical: PauliOp) -> tuple[StabilizerCode, PauliOp, BasisChange]:
    """把逻辑算符变为纯 X 型，返回 (变换后的码, 变换后的算符, 基变换记录)."""
    if logical.n != code.n:
        msg = f"逻辑算符比特数 {logical.n} 与码长 {code.n} 不一致"
        raise InvalidInputError(msg)
    bad = code.anticommuting_checks(logical)
    if bad:
        msg = f"逻辑算符与检查算符 {code.labels[bad[0]]} 反对易"
        raise CommutationError(msg)
    record = BasisChange.for_logical(logical)
    return record.apply_code(code), record.apply_op(logical), record


def restricted_z_support(check: PauliOp, support: Sequence[int]) -> list[int]:
    """检查算符（X 基下）在逻辑支撑上的 Z 分量所在比特."""
    return [q for q in support if check.z[q]]


@dataclass
class GaugingPlan:
    """规范化测量方案.

    logical 保存原始基下的算符；cycles 与 paths 中的边以下标表示。
    matching 记录每个检查算符匹配得到的边（矩阵 M 的行）。
    """

    logical: PauliOp
    graph: GaugingGraph
    cycles: list[list[int]] = field(default_factory=lambda: [])
    paths: dict[str, list[int]] = field(default_factory=lambda: {})
    matching: dict[str, list[int]] = field(default_factory=lambda: {})

    @cached_property
    def basis_change(self) -> BasisChange:
        return BasisChange.for_logical(self.logical)

    @property
    def x_logical(self) -> PauliOp:
        return self.basis_change.apply_op(self.logical)

    def cycle_matrix(self) -> BitMatrix:
        """通量环矩阵 N：行为环，列为边."""
        return BitMatrix.from_supports(self.cycles, self.graph.num_edges)

    def matching_matrix(self) -> BitMatrix:
        """匹配矩阵 M：行为 S 中的检查，列为边."""
        return BitMatrix.from_supports(self.matching.values(), self.graph.num_edges)

    def path_lengths(self) -> list[int]:
        return [len(p) for p in self.paths.values()]

    def with_graph(self, graph: GaugingGraph) -> "GaugingPlan":
        return GaugingPlan(self.logical, graph, [list(c) for c in self.cycles], dict(self.paths), dict(self.matching))

    def with_cycles(self, cycles: Sequence[Sequence[int]]) -> "GaugingPlan":
        return replace(self, cycles=[list(c) for c in cycles])

    def with_paths(self, paths: dict[str, list[int]]) -> "GaugingPlan":
        return replace(self, paths=dict(paths))

    def validate(self) -> None:
        """检查环是闭合的、顶点绑定与逻辑支撑一致."""
        support = set(self.x_logical.support)
        bound = {q for q in self.graph.bindings if q is not None}
        if bound != support:
            msg = f"辅助图绑定的比特 {sorted(bound)} 与逻辑支撑 {sorted(support)} 不一致"
            raise PlanError(msg)
        if not self.x_logical.is_x_type:
            msg = "基变换后逻辑算符不是纯 X 型"
            raise PlanError(msg)
        for idx, cycle in enumerate(self.cycles):
            if any(not 0 <= e < self.graph.num_edges for e in cycle):
                msg = f"环 {idx} 引用了不存在的边"
                raise PlanError(msg)
            if self.graph.boundary(cycle):
                msg = f"环 {idx} 不闭合"
                raise PlanError(msg)

    # ---- 序列化 ----

    def to_document(self) -> "PlanDocument":
        g = self.graph
        return PlanDocument(
            logical=str(self.logical),
            vertices=[VertexDocument(qubit=q, label=g.vertex_label(v)) for v, q in enumerate(g.bindings)],
            edges=[list(e) for e in g.edges],
            root=g.root,
            cycles=[list(c) for c in self.cycles],
            paths={k: list(v) for k, v in self.paths.items()},
            matching={k: list(v) for k, v in self.matching.items()},
        )

    @classmethod
    def from_document(cls, doc: "PlanDocument") -> "GaugingPlan":
        graph = GaugingGraph(
            [v.qubit for v in doc.vertices],
            [tuple(e) for e in doc.edges],
            doc.root,
            [v.label for v in doc.vertices] if all(v.label for v in doc.vertices) else None,
        )
        plan = cls(PauliOp.from_string(doc.logical), graph, doc.cycles, doc.paths, doc.matching)
        plan.validate()
        return plan


class VertexDocument(BaseModel):
    """顶点：绑定的比特（哑顶点为 null）与标签."""

    qubit: int | None
    label: str = ""


class PlanDocument(BaseModel):
    """方案的 JSON 文档格式."""

    logical: str
    vertices: list[VertexDocument]
    edges: list[list[int]]
    root: int = 0
    cycles: list[list[int]] = Field(default_factory=lambda: [])
    paths: dict[str, list[int]] = Field(default_factory=lambda: {})
    matching: dict[str, list[int]] = Field(default_factory=lambda: {})
    layers: dict[str, Any] | None = None


@dataclass
class PlanSet:
    """并行测量的一组方案，共享同一个基变换."""

    plans: list[GaugingPlan]
    basis_change: BasisChange

    def __len__(self) -> int:
        return len(self.plans)


def parallel_compose(plans: Sequence[GaugingPlan], overlap_cap: int | None = None) -> PlanSet:
    """组合多个方案：任意两个逻辑算符在公共比特上必须作用相同的 Pauli."""
    if not plans:
        msg = "至少需要一个方案"
        raise InvalidInputError(msg)
    n = plans[0].logical.n
    if any(p.logical.n != n for p in plans):
        msg = "各方案的逻辑算符比特数不一致"
        raise InvalidInputError(msg)
    letters = [p.logical.letters() for p in plans]
    for i in range(len(plans)):
        for j in range(i + 1, len(plans)):
            for q in range(n):
                a, b = letters[i][q], letters[j][q]
                if a != "I" and b != "I" and a != b:
                    msg = f"方案 {i} 与 {j} 在比特 {q} 上作用不同的 Pauli（{a} 与 {b}）"
                    raise CompatibilityError(msg, (i, j))
    if overlap_cap is not None:
        counts = np.zeros(n, dtype=np.int64)
        for word in letters:
            counts += np.array([ch != "I" for ch in word], dtype=np.int64)
        if counts.size and int(counts.max()) > overlap_cap:
            q = int(counts.argmax())
            holders = [i for i, word in enumerate(letters) if word[q] != "I"]
            msg = f"比特 {q} 被 {int(counts[q])} 个逻辑算符共享，超过上限 {overlap_cap}"
            raise CompatibilityError(msg, (holders[0], holders[1]))
    record = BasisChange()
    for p in plans:
        record = record.merged(p.basis_change)
    return PlanSet(list(plans), record)
