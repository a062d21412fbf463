"""在稳定子表上执行规范化测量."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from gaugewise.errors import InvalidInputError, PlanError, VerificationError
from gaugewise.f2 import solve
from gaugewise.gauging.plan import GaugingPlan, PlanSet
from gaugewise.pauli import Gate, PauliOp, Tableau

logger = logging.getLogger(__name__)

MeasureMode = Literal["algorithm1", "circuit"]


@dataclass
class GaugeResult:
    """一次规范化测量的结果.

    byproduct 为原始基下作用在码比特上的 Pauli 修正（已作用到 tableau 上）。
    """

    sigma: int
    tableau: Tableau
    byproduct: PauliOp
    vertex_outcomes: list[int] = field(default_factory=lambda: [])
    edge_outcomes: list[int] = field(default_factory=lambda: [])


def _bit(outcome: int) -> int:
    return 0 if outcome == 1 else 1


def byproduct_vertices(plan: GaugingPlan, edge_bits: Sequence[int]) -> list[int]:
    """求 δc = z 的顶点解 c：普通图沿根出发的生成树累加，超图直接求解."""
    graph = plan.graph
    if not graph.is_hypergraph:
        tree = graph.spanning_tree()
        value: dict[int, int] = {graph.root: 0}

        def resolve(v: int) -> int:
            chain: list[int] = []
            while v not in value:
                chain.append(v)
                v = tree[v][0]
            for w in reversed(chain):
                parent, idx = tree[w]
                value[w] = value[parent] ^ edge_bits[idx]
            return value[chain[0]] if chain else value[v]

        return [v for v in range(graph.num_vertices) if resolve(v)]
    sol = solve(graph.incidence().T, np.asarray(edge_bits, dtype=np.uint8))
    if sol is None:
        msg = "边测量结果与通量约束矛盾，无法求出副产物"
        raise VerificationError(msg)
    return [int(v) for v in np.flatnonzero(sol)]


def gauge_measure(
    t: Tableau,
    plan: GaugingPlan,
    mode: MeasureMode = "algorithm1",
    rng: np.random.Generator | None = None,
    keep_edges: bool = False,
) -> GaugeResult:
    """规范化测量逻辑算符.

    algorithm1 模式直接测量 A_v；circuit 模式用 CX 纠缠电路把 A_v 转成单比特 X 测量。
    keep_edges 时在 Gauss 定律测量后停止，保留边比特。
    """
    if mode not in ("algorithm1", "circuit"):
        msg = f"未知测量模式: {mode}"
        raise InvalidInputError(msg)
    if plan.logical.n != t.n:
        msg = f"方案作用于 {plan.logical.n} 个比特，tableau 有 {t.n} 个"
        raise PlanError(msg)
    graph = plan.graph
    if not keep_edges:
        graph.require_connected()
    state = t.copy()
    record = plan.basis_change
    record.apply_tableau(state)
    n = state.n
    edge_q = state.extend(graph.num_edges, "0")
    incident = graph.incident_edges()
    dummy_q: dict[int, int] = {}
    if mode == "circuit":
        extra = state.extend(len(graph.dummies), "+")
        dummy_q = dict(zip(graph.dummies, extra, strict=True))

    def vertex_qubit(v: int) -> int | None:
        q = graph.bindings[v]
        return q if q is not None else dummy_q.get(v)

    vertex_outcomes: list[int] = []
    if mode == "algorithm1":
        for v in range(graph.num_vertices):
            support = [edge_q[e] for e in incident[v]]
            q = vertex_qubit(v)
            if q is not None:
                support.append(q)
            op = PauliOp.x_type(state.n, support)
            vertex_outcomes.append(state.measure(op, rng=rng, label=f"A{v}").outcome)
    else:
        entangler = [
            Gate("CX", (q, edge_q[e]))
            for e, edge in enumerate(graph.edges)
            for v in edge
            if (q := vertex_qubit(v)) is not None
        ]
        state.apply_gates(entangler)
        for v in range(graph.num_vertices):
            q = vertex_qubit(v)
            assert q is not None
            op = PauliOp.x_type(state.n, [q])
            vertex_outcomes.append(state.measure(op, rng=rng, label=f"A{v}").outcome)
        state.apply_gates(entangler)
    sigma = int(np.prod(vertex_outcomes)) if vertex_outcomes else 1

    edge_outcomes: list[int] = []
    byproduct = PauliOp.identity(n)
    if not keep_edges:
        for e, q in enumerate(edge_q):
            edge_outcomes.append(state.measure(PauliOp.z_type(state.n, [q]), rng=rng, label=f"Z_e{e}").outcome)
        flips = byproduct_vertices(plan, [_bit(o) for o in edge_outcomes])
        bound = [q for v in flips if (q := graph.bindings[v]) is not None]
        byproduct = PauliOp.x_type(n, bound)
        if bound:
            state.apply_pauli(byproduct.extended(state.n - n))
        for v, q in dummy_q.items():
            state.measure(PauliOp.x_type(state.n, [q]), forced=1, label=f"dummy{v}")
        state.discard([*edge_q, *dummy_q.values()])
    elif dummy_q:
        for v, q in dummy_q.items():
            state.measure(PauliOp.x_type(state.n, [q]), forced=1, label=f"dummy{v}")
        state.discard(list(dummy_q.values()))
    # 基变换只作用在码比特上，保留的边比特不受影响
    record.undo_tableau(state)
    logger.debug(f"规范化测量: σ={sigma:+d}, 模式 {mode}, 副产物 {byproduct.weight} 个比特")
    return GaugeResult(sigma, state, record.undo_op(byproduct), vertex_outcomes, edge_outcomes)


def gauge_measure_all(
    t: Tableau,
    plans: PlanSet,
    mode: MeasureMode = "algorithm1",
    rng: np.random.Generator | None = None,
) -> list[GaugeResult]:
    """依次执行一组兼容方案，返回每个方案的结果；最后一个结果的 tableau 为最终态."""
    results: list[GaugeResult] = []
    state = t
    for plan in plans.plans:
        result = gauge_measure(state, plan, mode, rng)
        results.append(result)
        state = result.tableau
    return results
