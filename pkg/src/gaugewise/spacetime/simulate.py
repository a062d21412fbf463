"""按时间表在稳定子表上完整模拟容错规范化测量，可注入任意故障集合."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np

from gaugewise.codes import code_state, logical_basis
from gaugewise.errors import InvalidInputError, VerificationError
from gaugewise.gauging import DeformedCode, byproduct_vertices
from gaugewise.pauli import CanonicalForm, PauliOp, Tableau
from gaugewise.spacetime.schedule import FaultSite, Schedule, measurement_fault, pauli_fault

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Measurement:
    """时间线上的一次测量，发生在 t+½."""

    index: int
    label: str
    t: int
    op: PauliOp
    kind: Literal["check", "readout"]
    perfect: bool


@dataclass
class RunRecord:
    """一次模拟的记录：观测到的测量结果（已计入测量错误）、σ 与最终态."""

    outcomes: list[int]
    sigma: int
    final: CanonicalForm
    byproduct: PauliOp


class Timeline:
    """形变码容错测量的事件序列.

    所有测量算符都作用在 n + |E| 个比特上；边比特在 t_i 之前闲置于 |0⟩，
    t_o+½ 读出后不再被触碰。初态是原码中 +L 的本征码态，因此 σ 在无错时恒为 +1。
    """

    def __init__(self, dc: DeformedCode, schedule: Schedule) -> None:
        if len(dc.plans) != 1:
            msg = "时空分析只支持单个方案的形变码"
            raise InvalidInputError(msg)
        if dc.plan.graph.is_hypergraph:
            msg = "时空分析只支持普通图方案"
            raise InvalidInputError(msg)
        self.dc = dc
        self.schedule = schedule
        self.plan = dc.plan
        self.n = dc.base.n
        self.total = dc.code.n
        self.edge_qubits = list(dc.edge_qubits[0])
        self.measurements: list[Measurement] = []
        self.rounds: dict[int, list[int]] = {}
        self.readout_of: dict[int, int] = {}
        self._index: dict[tuple[str, int], int] = {}
        self._clean: dict[int, RunRecord] = {}
        self._build()
        self.sigma_indices = [self.index(label, schedule.t_i) for label in dc.gauss_labels]

    def _add(self, label: str, t: int, op: PauliOp, kind: Literal["check", "readout"], perfect: bool) -> int:
        idx = len(self.measurements)
        self.measurements.append(Measurement(idx, label, t, op, kind, perfect))
        self._index[(label, t)] = idx
        return idx

    def _build(self) -> None:
        s = self.schedule
        extra = self.total - self.n
        base_ops = [(lab, c.extended(extra)) for lab, c in zip(self.dc.base.labels, self.dc.base.checks, strict=True)]
        flux = set(self.dc.flux_labels)
        deformed_ops = [
            (lab, c)
            for lab, c in zip(self.dc.code.labels, self.dc.code.checks, strict=True)
            if s.flux_cadence == "every_round" or lab not in flux
        ]
        for t in s.rounds():
            ids: list[int] = []
            if t == s.t_o:
                for q in self.edge_qubits:
                    ids.append(self._add(self.edge_label(q), t, PauliOp.z_type(self.total, [q]), "readout", False))
                    self.readout_of[q] = ids[-1]
            deformed = s.is_deformed_round(t)
            for lab, op in deformed_ops if deformed else base_ops:
                ids.append(self._add(lab, t, op, "check", not deformed and s.is_perfect_round(t)))
            self.rounds[t] = ids
        logger.debug(f"时间线: {len(self.measurements)} 次测量，{len(self.rounds)} 轮")

    # ---- 查询 ----

    def edge_label(self, q: int) -> str:
        return f"Z_e{q - self.n}"

    def index(self, label: str, t: int) -> int:
        """t+½ 处检查 label 的测量下标."""
        key = (label, t)
        if key not in self._index:
            msg = f"时间线上没有 {t}+½ 处对 {label} 的测量"
            raise InvalidInputError(msg)
        return self._index[key]

    def deformed_label(self, base_label: str) -> str:
        """原码检查在形变期间对应的标签."""
        inverse = {old: new for new, old in self.dc.deformed_from.items()}
        return inverse.get(base_label, base_label)

    def edge_support(self, op: PauliOp) -> list[int]:
        return [q for q in op.support if q >= self.n]

    # ---- 故障 ----

    def validate_fault(self, f: FaultSite) -> None:
        s = self.schedule
        ok = True
        if f.kind == "pauli":
            if f.pauli not in ("X", "Y", "Z") or not 0 <= f.qubit < self.total:
                ok = False
            elif f.qubit < self.n:
                ok = s.t_first <= f.t <= s.t_last
            else:
                ok = s.t_i <= f.t <= s.t_o
        elif f.kind == "measurement":
            idx = self._index.get((f.label, f.t))
            ok = idx is not None and self.measurements[idx].kind == "check" and not self.measurements[idx].perfect
        elif f.kind == "init":
            ok = f.qubit in self.readout_of and f.t == s.t_i - 1
        elif f.kind == "readout":
            ok = f.qubit in self.readout_of and f.t == s.t_o
        else:
            ok = False
        if not ok:
            msg = f"非法故障位置: {f}"
            raise InvalidInputError(msg)

    def fault_operator(self, f: FaultSite) -> PauliOp:
        q = f.qubit
        return PauliOp.from_support(
            self.total, [q] if f.pauli in ("X", "Y") else [], [q] if f.pauli in ("Z", "Y") else []
        )

    def elementary_faults(self) -> list[FaultSite]:
        """全部单个故障：Pauli、非完美轮的测量错误、边初始化与读出错误."""
        s = self.schedule
        faults = [pauli_fault(q, p, t) for t in s.rounds() for q in range(self.n) for p in "XYZ"]
        faults += [pauli_fault(q, p, t) for t in range(s.t_i, s.t_o + 1) for q in self.edge_qubits for p in "XYZ"]
        faults += [measurement_fault(m.label, m.t) for m in self.measurements if m.kind == "check" and not m.perfect]
        for q in self.edge_qubits:
            faults.append(FaultSite("init", s.t_i - 1, qubit=q))
            faults.append(FaultSite("readout", s.t_o, qubit=q))
        return faults

    def _byproduct(self, edge_bits: list[int]) -> PauliOp:
        graph = self.plan.graph
        flips = byproduct_vertices(self.plan, edge_bits)
        bound = [q for v in flips if (q := graph.bindings[v]) is not None]
        return self.plan.basis_change.undo_op(PauliOp.x_type(self.n, bound))

    def residual(self, f: FaultSite) -> PauliOp:
        """故障在读出与副产物修正之后留在码比特上的 Pauli（按 Pauli 框架传播）."""
        if f.kind == "pauli" and f.qubit < self.n:
            return self.fault_operator(f).restricted(list(range(self.n)))
        flips_readout = f.kind in ("init", "readout") or (f.kind == "pauli" and f.pauli in ("X", "Y"))
        if f.qubit < self.n or not flips_readout:
            return PauliOp.identity(self.n)
        bits = [int(q == f.qubit) for q in self.edge_qubits]
        return self._byproduct(bits)

    # ---- 模拟 ----

    @cached_property
    def _logical_flip(self) -> PauliOp:
        logical = self.plan.logical
        for pair in logical_basis(self.dc.base):
            for op in pair:
                if not op.commutes(logical):
                    return op
        msg = f"找不到与 {logical} 反对易的逻辑算符"
        raise VerificationError(msg)

    def initial_state(self, rng: np.random.Generator) -> Tableau:
        state = code_state(self.dc.base)
        logical = self.plan.logical
        if logical.weight and state.measure(logical, rng=rng).outcome == -1:
            state.apply_pauli(self._logical_flip)
        state.outcomes.clear()
        state.extend(self.total - self.n, "0")
        return state

    def clean_run(self, seed: int = 0) -> RunRecord:
        """无错模拟（按 seed 缓存）."""
        if seed not in self._clean:
            self._clean[seed] = self.run(seed=seed)
        return self._clean[seed]

    def run(self, faults: Iterable[FaultSite] = (), seed: int = 0) -> RunRecord:
        """注入故障并完整模拟；相同 seed 下随机测量的抽样顺序一致."""
        s = self.schedule
        rng = np.random.default_rng(seed)
        paulis: dict[int, list[PauliOp]] = {}
        flipped: set[int] = set()
        inits: list[int] = []
        for f in faults:
            self.validate_fault(f)
            if f.kind == "pauli":
                paulis.setdefault(f.t, []).append(self.fault_operator(f))
            elif f.kind == "measurement":
                flipped ^= {self._index[(f.label, f.t)]}
            elif f.kind == "init":
                inits.append(f.qubit)
            else:
                flipped ^= {self.readout_of[f.qubit]}
        state = self.initial_state(rng)
        outcomes: list[int] = []
        for t in s.rounds():
            for op in paulis.get(t, []):
                state.apply_pauli(op)
            for idx in self.rounds[t]:
                m = self.measurements[idx]
                value = state.measure(m.op, rng=rng, label=m.label).outcome
                outcomes.append(-value if idx in flipped else value)
            if t == s.t_i - 1:
                for q in inits:
                    state.apply_pauli(PauliOp.x_type(self.total, [q]))
        bits = [0 if outcomes[self.readout_of[q]] == 1 else 1 for q in self.edge_qubits]
        byproduct = self._byproduct(bits)
        state.apply_pauli(byproduct.extended(self.total - self.n))
        state.discard(self.edge_qubits)
        sigma = int(np.prod([outcomes[i] for i in self.sigma_indices])) if self.sigma_indices else 1
        return RunRecord(outcomes, sigma, state.canonical(), byproduct)
