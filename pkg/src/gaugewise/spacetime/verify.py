"""综合征映射、时空稳定子校验、时间逻辑故障与故障距离搜索."""

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

from pydantic import BaseModel

from gaugewise.codes import RowSpace
from gaugewise.codes.stabilizer import bits_to_int, int_to_bits
from gaugewise.config import Settings, get_settings
from gaugewise.errors import BudgetExceededError, InvalidInputError, VerificationError
from gaugewise.f2 import BitMatrix
from gaugewise.gauging import DeformedCode
from gaugewise.pauli import PauliOp
from gaugewise.spacetime.detectors import Detector, build_detectors, violated
from gaugewise.spacetime.schedule import FaultSite, Schedule, measurement_fault, pauli_fault
from gaugewise.spacetime.simulate import Timeline

logger = logging.getLogger(__name__)


@dataclass
class SyndromeMap:
    """单故障的检测器列（位掩码）、σ 翻转位与残余 Pauli（辛向量整数）."""

    timeline: Timeline
    detectors: list[Detector]
    faults: list[FaultSite]
    columns: list[int]
    sigma: list[int]
    residuals: list[int]
    index: dict[FaultSite, int] = field(init=False)

    def __post_init__(self) -> None:
        self.index = {f: i for i, f in enumerate(self.faults)}

    def matrix(self) -> BitMatrix:
        """检测器矩阵 D：行为故障，列为检测器."""
        supports = [[d for d in range(len(self.detectors)) if (col >> d) & 1] for col in self.columns]
        return BitMatrix.from_supports(supports, len(self.detectors))

    def locate(self, f: FaultSite) -> int:
        if f not in self.index:
            msg = f"故障 {f} 不在单故障列表中"
            raise InvalidInputError(msg)
        return self.index[f]


class SyndromeResult(NamedTuple):
    violated: list[int]
    flips_sigma: bool


class Evaluation(NamedTuple):
    """完整模拟的判定结果."""

    violated: list[int]
    flips_sigma: bool
    state_preserved: bool


def _mask(ids: Iterable[int]) -> int:
    out = 0
    for i in ids:
        out |= 1 << i
    return out


def build_syndrome_map(
    dc: DeformedCode,
    schedule: Schedule,
    seed: int = 0,
    settings: Settings | None = None,
    timeline: Timeline | None = None,
) -> SyndromeMap:
    """逐个注入单故障做完整模拟，记录被违反的检测器与 σ 是否翻转."""
    settings = settings or get_settings()
    timeline = timeline or Timeline(dc, schedule)
    detectors = build_detectors(dc, schedule, seed, timeline)
    clean = timeline.clean_run(seed)
    faults = timeline.elementary_faults()

    def inject(f: FaultSite) -> tuple[int, int]:
        record = timeline.run([f], seed)
        return _mask(violated(detectors, record.outcomes)), int(record.sigma != clean.sigma)

    with ThreadPoolExecutor(max_workers=settings.worker_threads) as pool:
        results = list(pool.map(inject, faults))
    residuals = [bits_to_int(timeline.residual(f).symplectic()) for f in faults]
    logger.info(f"综合征映射: {len(faults)} 个单故障 × {len(detectors)} 个检测器")
    return SyndromeMap(
        timeline,
        detectors,
        faults,
        [c for c, _ in results],
        [s for _, s in results],
        residuals,
    )


def syndrome(smap: SyndromeMap, faults: Iterable[FaultSite]) -> SyndromeResult:
    """故障集合的综合征：各单故障列的异或，以及 σ 翻转的奇偶."""
    col = 0
    flip = 0
    for f in faults:
        i = smap.locate(f)
        col ^= smap.columns[i]
        flip ^= smap.sigma[i]
    return SyndromeResult([d for d in range(len(smap.detectors)) if (col >> d) & 1], bool(flip))


def evaluate(
    timeline: Timeline,
    detectors: Sequence[Detector],
    faults: Sequence[FaultSite],
    seed: int = 0,
) -> Evaluation:
    """注入故障集合做完整模拟，与同 seed 的无错模拟比较."""
    clean = timeline.clean_run(seed)
    record = timeline.run(faults, seed)
    return Evaluation(
        violated(detectors, record.outcomes),
        record.sigma != clean.sigma,
        record.final == clean.final,
    )


# ---- 时空稳定子 ----


def _operator_faults(op: PauliOp, t: int) -> list[FaultSite]:
    letters = op.letters()
    return [pauli_fault(q, letters[q], t) for q in op.support]


def spacetime_stabilizer_generators(timeline: Timeline) -> list[tuple[str, list[FaultSite]]]:
    """列出局部时空稳定子生成元：检查算符、相邻时刻的 Pauli 对加测量错误，以及两个形变时刻的边界项."""
    s = timeline.schedule
    dc = timeline.dc
    n, total = timeline.n, timeline.total
    gens: list[tuple[str, list[FaultSite]]] = []

    # 检查算符本身
    for t in s.rounds():
        if s.t_i + 1 <= t <= s.t_o:
            ops = list(zip(dc.code.labels, dc.code.checks, strict=True))
        else:
            ops = [(lab, c.extended(total - n)) for lab, c in zip(dc.base.labels, dc.base.checks, strict=True)]
            if t == s.t_i:
                ops += [(timeline.edge_label(q), PauliOp.z_type(total, [q])) for q in timeline.edge_qubits]
        gens.extend((f"{lab}@{t}", _operator_faults(op, t)) for lab, op in ops)

    # t 与 t+1 处的同一 Pauli，加上 t+½ 处与之反对易的测量错误
    def pair(q: int, letter: str, t: int) -> list[FaultSite]:
        op = timeline.fault_operator(pauli_fault(q, letter, t))
        flips = [
            measurement_fault(m.label, t)
            for idx in timeline.rounds[t]
            if (m := timeline.measurements[idx]).kind == "check" and not m.op.commutes(op)
        ]
        return [pauli_fault(q, letter, t), pauli_fault(q, letter, t + 1), *flips]

    for t in range(s.t_first + 1, s.t_last):
        for q in range(n):
            for letter in "XZ":
                gens.append((f"{letter}{q}@{t},{t + 1}", pair(q, letter, t)))
    for t in range(s.t_i, s.t_o):
        for q in timeline.edge_qubits:
            for letter in "XZ":
                gens.append((f"{letter}{q}@{t},{t + 1}", pair(q, letter, t)))

    graph = timeline.plan.graph
    for e, q in enumerate(timeline.edge_qubits):
        ends = [dc.gauss_labels[v] for v in graph.edges[e]]
        gens.append((f"init{q}+X{q}@{s.t_i}", [FaultSite("init", s.t_i - 1, qubit=q), pauli_fault(q, "X", s.t_i)]))
        gens.append(
            (f"Z{q}@{s.t_i + 1}+A", [pauli_fault(q, "Z", s.t_i + 1), *(measurement_fault(a, s.t_i) for a in ends)])
        )
        gens.append((f"X{q}@{s.t_o}+readout", [pauli_fault(q, "X", s.t_o), FaultSite("readout", s.t_o, qubit=q)]))
        gens.append((f"Z{q}@{s.t_o}", [pauli_fault(q, "Z", s.t_o)]))
        gens.append(
            (f"Z{q}@{s.t_o - 1}+A", [pauli_fault(q, "Z", s.t_o - 1), *(measurement_fault(a, s.t_o - 1) for a in ends)])
        )
    return gens


class StabilizerReport(BaseModel):
    """时空稳定子校验报告."""

    generators: int
    detectors: int
    seed: int
    passed: bool


def verify_spacetime_stabilizers(
    dc: DeformedCode,
    schedule: Schedule,
    seed: int = 0,
    settings: Settings | None = None,
) -> StabilizerReport:
    """每个生成元都必须综合征为空、σ 不变且最终态不变，否则抛出 VerificationError."""
    settings = settings or get_settings()
    timeline = Timeline(dc, schedule)
    detectors = build_detectors(dc, schedule, seed, timeline)
    gens = spacetime_stabilizer_generators(timeline)

    def check(item: tuple[str, list[FaultSite]]) -> tuple[str, Evaluation]:
        return item[0], evaluate(timeline, detectors, item[1], seed)

    with ThreadPoolExecutor(max_workers=settings.worker_threads) as pool:
        results = list(pool.map(check, gens))
    for name, ev in results:
        if ev.violated:
            msg = f"时空稳定子 {name} 违反了检测器 {[detectors[i].name for i in ev.violated]}"
            raise VerificationError(msg)
        if ev.flips_sigma or not ev.state_preserved:
            msg = f"时空稳定子 {name} 改变了测量结果或最终态"
            raise VerificationError(msg)
    logger.info(f"时空稳定子校验通过: {len(gens)} 个生成元")
    return StabilizerReport(generators=len(gens), detectors=len(detectors), seed=seed, passed=True)


def time_logical_fault(dc: DeformedCode, schedule: Schedule, seed: int = 0, vertex: int = 0) -> list[FaultSite]:
    """顶点 vertex 上 A_v 在全部形变轮中的测量错误：综合征为空且翻转 σ，权重 t_o − t_i."""
    timeline = Timeline(dc, schedule)
    detectors = build_detectors(dc, schedule, seed, timeline)
    label = dc.gauss_labels[vertex]
    faults = [measurement_fault(label, t) for t in range(schedule.t_i, schedule.t_o)]
    ev = evaluate(timeline, detectors, faults, seed)
    if ev.violated or not ev.flips_sigma:
        msg = f"{label} 的重复测量错误串没有构成时间逻辑故障"
        raise VerificationError(msg)
    return faults


def edge_measurement_string(dc: DeformedCode, schedule: Schedule, edge: int = 0, seed: int = 0) -> list[FaultSite]:
    """边初始化错误、随后与 X_e 反对易的检查的全部测量错误、再加读出错误：平凡的时间故障."""
    timeline = Timeline(dc, schedule)
    detectors = build_detectors(dc, schedule, seed, timeline)
    q = timeline.edge_qubits[edge]
    x_e = PauliOp.x_type(timeline.total, [q])
    faults = [FaultSite("init", schedule.t_i - 1, qubit=q)]
    for t in range(schedule.t_i, schedule.t_o):
        faults += [
            measurement_fault(m.label, t)
            for idx in timeline.rounds[t]
            if (m := timeline.measurements[idx]).kind == "check" and not m.op.commutes(x_e)
        ]
    faults.append(FaultSite("readout", schedule.t_o, qubit=q))
    ev = evaluate(timeline, detectors, faults, seed)
    if ev.violated or ev.flips_sigma or not ev.state_preserved:
        msg = f"边 {edge} 的测量错误串不是时空稳定子"
        raise VerificationError(msg)
    return faults


# ---- 故障距离 ----


@dataclass
class FaultSearchResult:
    """最小权重的时空逻辑故障."""

    weight: int
    faults: list[FaultSite]
    flips_sigma: bool
    residual: PauliOp


def fault_distance_search(
    dc: DeformedCode,
    schedule: Schedule,
    w_max: int,
    seed: int = 0,
    settings: Settings | None = None,
    smap: SyndromeMap | None = None,
) -> FaultSearchResult | None:
    """按权重递增枚举综合征为空、且翻转 σ 或留下非平凡残余的故障集合.

    最后一个故障由前 w−1 个故障的综合征查表得到。
    """
    if w_max < 0:
        msg = f"w_max 必须 ≥ 0，得到 {w_max}"
        raise InvalidInputError(msg)
    if w_max == 0:
        return None
    settings = settings or get_settings()
    smap = smap or build_syndrome_map(dc, schedule, seed, settings)
    timeline = smap.timeline
    space = RowSpace(bits_to_int(c.symplectic()) for c in dc.base.checks)
    space.add(bits_to_int(timeline.plan.logical.symplectic()))
    count = len(smap.faults)
    by_column: dict[int, list[int]] = {}
    for i, col in enumerate(smap.columns):
        by_column.setdefault(col, []).append(i)

    def logical(idxs: Sequence[int]) -> bool:
        flip = res = 0
        for i in idxs:
            flip ^= smap.sigma[i]
            res ^= smap.residuals[i]
        return bool(flip) or space.reduce(res) != 0

    def scan(first: int | None, w: int) -> tuple[int, ...] | None:
        if first is None:
            prefixes: Iterable[tuple[int, ...]] = [()]
        else:
            prefixes = ((first, *rest) for rest in itertools.combinations(range(first + 1, count), w - 2))
        for prefix in prefixes:
            col = 0
            for i in prefix:
                col ^= smap.columns[i]
            floor = prefix[-1] if prefix else -1
            for k in by_column.get(col, []):
                if k > floor and logical((*prefix, k)):
                    return (*prefix, k)
        return None

    spent = 0
    for w in range(1, w_max + 1):
        spent += math.comb(count, w - 1)
        if spent > settings.fault_search_budget:
            msg = f"故障距离搜索超出预算 {settings.fault_search_budget}（权重 {w}）"
            raise BudgetExceededError(msg)
        firsts: list[int | None] = [None] if w == 1 else list(range(count))
        with ThreadPoolExecutor(max_workers=settings.worker_threads) as pool:
            found = [r for r in pool.map(lambda f, w=w: scan(f, w), firsts) if r is not None]
        logger.info(f"故障距离搜索: 权重 {w}，{'找到' if found else '未找到'}逻辑故障")
        if found:
            idxs = found[0]
            flip = 0
            res = 0
            for i in idxs:
                flip ^= smap.sigma[i]
                res ^= smap.residuals[i]
            residual = PauliOp.from_symplectic(int_to_bits(res, 2 * timeline.n))
            return FaultSearchResult(w, [smap.faults[i] for i in idxs], bool(flip), residual)
    return None
