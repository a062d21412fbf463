"""辅助图合成：完美匹配、路径布线与扩张边."""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, NamedTuple

import networkx as nx
import numpy as np

from gaugewise.codes import StabilizerCode, distance_upper
from gaugewise.config import Settings, get_settings
from gaugewise.errors import (
    ExpansionSearchError,
    GaugewiseError,
    InvalidInputError,
    PlanError,
)
from gaugewise.gauging.cycles import select_flux_checks
from gaugewise.gauging.deform import deform
from gaugewise.gauging.graph import GaugingGraph
from gaugewise.gauging.plan import GaugingPlan, basis_change_to_x, restricted_z_support
from gaugewise.pauli import PauliOp

logger = logging.getLogger(__name__)

RoutingMode = Literal["matching", "shortest"]


class Matching(NamedTuple):
    """匹配结果：顶点对形式的边，以及每个检查用到的边下标."""

    edges: list[tuple[int, int]]
    rows: dict[str, list[int]]


def _pairs(vertices: Sequence[int]) -> list[tuple[int, int]]:
    return [(vertices[i], vertices[i + 1]) for i in range(0, len(vertices), 2)]


def matching_edges(code: StabilizerCode, logical: PauliOp) -> Matching:
    """对每个检查在逻辑支撑上的 Z 分量做 Z2 完美匹配.

    顶点为逻辑支撑中的比特（按比特下标递增编号），连续两两配对；
    相同的顶点对只建一条边。
    """
    xcode, xlogical, _ = basis_change_to_x(code, logical)
    support = xlogical.support
    vertex_of = {q: v for v, q in enumerate(support)}
    edges: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    rows: dict[str, list[int]] = {}
    for label, check in zip(xcode.labels, xcode.checks, strict=True):
        restricted = restricted_z_support(check, support)
        if not restricted:
            continue
        if len(restricted) % 2:
            msg = f"检查 {label} 在逻辑支撑上的 Z 分量有奇数个比特（{len(restricted)}）"
            raise PlanError(msg)
        row: list[int] = []
        for a, b in _pairs([vertex_of[q] for q in restricted]):
            key = (a, b)
            if key not in index:
                index[key] = len(edges)
                edges.append(key)
            row.append(index[key])
        rows[label] = row
    logger.info(f"完美匹配: 逻辑支撑 {len(support)} 个比特，{len(rows)} 个检查，{len(edges)} 条边")
    return Matching(edges, rows)


def initial_plan(code: StabilizerCode, logical: PauliOp) -> GaugingPlan:
    """匹配图作为初始方案：路径即匹配边，尚未选取通量环."""
    matching = matching_edges(code, logical)
    xlogical = basis_change_to_x(code, logical)[1]
    graph = GaugingGraph(list(xlogical.support), list(matching.edges))
    return GaugingPlan(logical, graph, [], dict(matching.rows), dict(matching.rows))


def route_paths(plan: GaugingPlan, code: StabilizerCode, mode: RoutingMode | None = None) -> GaugingPlan:
    """为每个形变检查布线 γ_j.

    matching 模式直接用匹配边；shortest 模式对连续配对的顶点取图上最短路，
    重复经过的边按 F2 相消。
    """
    mode = mode or get_settings().path_routing
    if mode == "matching":
        return plan.with_paths(plan.matching)
    if mode != "shortest":
        msg = f"未知布线模式: {mode}"
        raise InvalidInputError(msg)
    graph = plan.graph
    nxg = graph.to_networkx()
    xcode = plan.basis_change.apply_code(code)
    support = plan.x_logical.support
    vertex_of = graph.vertex_of_qubit()
    paths: dict[str, list[int]] = {}
    for label, check in zip(xcode.labels, xcode.checks, strict=True):
        restricted = restricted_z_support(check, support)
        if not restricted:
            continue
        mask = 0
        for a, b in _pairs([vertex_of[q] for q in restricted]):
            try:
                walk = nx.shortest_path(nxg, a, b)
            except nx.NetworkXNoPath as exc:
                msg = f"检查 {label} 的顶点 {a} 与 {b} 不连通"
                raise PlanError(msg) from exc
            for u, v in zip(walk, walk[1:], strict=False):
                mask ^= 1 << min(graph.edges_between(u, v))
        paths[label] = [e for e in range(graph.num_edges) if (mask >> e) & 1]
    return plan.with_paths(paths)


# ---- 扩张边 ----

Tester = Callable[[GaugingPlan], int]


@dataclass(frozen=True)
class RandomExpansion:
    """随机扩张边搜索参数.

    每次试验均匀抽取 count 个不成自环的顶点对（度数不超过上限），
    tester 返回形变码的距离上界，不低于 target 即接受。
    """

    count: int
    target: int
    budget: int = 64
    seed: int = 0
    trials: int = 50
    tester: Tester | None = None


def _validate_pairs(graph: GaugingGraph, extra: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for pair in extra:
        if len(pair) != 2:
            msg = f"扩张边 {tuple(pair)} 不是顶点对"
            raise InvalidInputError(msg)
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < graph.num_vertices and 0 <= v < graph.num_vertices) or u == v:
            msg = f"扩张边 ({u}, {v}) 的端点非法"
            raise InvalidInputError(msg)
        out.append((u, v))
    return out


def sample_edges(graph: GaugingGraph, count: int, rng: np.random.Generator, degree_cap: int) -> list[tuple[int, int]]:
    """均匀抽取 count 条新边，跳过超过度数上限的顶点对."""
    nv = graph.num_vertices
    if nv < 2:
        msg = "顶点数不足，无法添加边"
        raise InvalidInputError(msg)
    degrees = graph.degrees()
    picked: list[tuple[int, int]] = []
    attempts = 0
    while len(picked) < count:
        attempts += 1
        if attempts > 100 * max(count, 1) * nv:
            msg = f"度数上限 {degree_cap} 下无法再添加边"
            raise PlanError(msg)
        u, v = (int(x) for x in rng.choice(nv, size=2, replace=False))
        if degrees[u] >= degree_cap or degrees[v] >= degree_cap:
            continue
        degrees[u] += 1
        degrees[v] += 1
        picked.append((min(u, v), max(u, v)))
    return picked


def deformed_distance_tester(code: StabilizerCode, trials: int, seed: int, settings: Settings) -> Tester:
    """默认测试器：选通量环、构造形变码、随机搜索距离上界."""

    def test(plan: GaugingPlan) -> int:
        chosen = select_flux_checks(plan, code)
        dc = deform(code, chosen)
        return distance_upper(dc.code, trials=trials, seed=seed, settings=settings).weight

    return test


def _run_trial(
    plan: GaugingPlan, spec: RandomExpansion, tester: Tester, index: int, cap: int
) -> tuple[int, int, list[tuple[int, int]]]:
    rng = np.random.default_rng([spec.seed, index])
    extra = sample_edges(plan.graph, spec.count, rng, cap)
    candidate = plan.with_graph(plan.graph.with_edges(extra))
    try:
        weight = tester(candidate)
    except GaugewiseError as exc:
        logger.debug(f"试验 {index} 被拒绝: {exc}")
        weight = 0
    logger.debug(f"试验 {index}: 距离上界 {weight}")
    return index, weight, extra


def add_expander_edges(
    plan: GaugingPlan,
    extra: Sequence[Sequence[int]] | RandomExpansion = (),
    code: StabilizerCode | None = None,
    settings: Settings | None = None,
) -> GaugingPlan:
    """向辅助图添加扩张边：给定边表，或随机搜索直到测试器通过."""
    if not isinstance(extra, RandomExpansion):
        pairs = _validate_pairs(plan.graph, extra)
        if not pairs:
            return plan
        logger.info(f"添加 {len(pairs)} 条给定的扩张边")
        return plan.with_graph(plan.graph.with_edges(pairs))

    spec = extra
    settings = settings or get_settings()
    if spec.tester is None and code is None:
        msg = "随机扩张需要 code 或自定义 tester"
        raise InvalidInputError(msg)
    tester = spec.tester
    if tester is None:
        assert code is not None
        tester = deformed_distance_tester(code, spec.trials, spec.seed, settings)
    if spec.budget < 1:
        msg = f"budget 必须 ≥ 1，得到 {spec.budget}"
        raise InvalidInputError(msg)
    cap = settings.expander_degree_cap
    batch = max(1, settings.worker_threads)
    best: tuple[int, int, list[tuple[int, int]]] | None = None
    logger.info(f"随机扩张: 每次 {spec.count} 条边，目标距离 {spec.target}，预算 {spec.budget} 次试验")
    with ThreadPoolExecutor(max_workers=batch) as pool:
        for start in range(0, spec.budget, batch):
            indices = range(start, min(start + batch, spec.budget))
            results = list(pool.map(lambda i: _run_trial(plan, spec, tester, i, cap), indices))
            for index, weight, edges in results:
                if best is None or weight > best[1]:
                    best = (index, weight, edges)
            passing = [r for r in results if r[1] >= spec.target]
            if passing:
                index, weight, edges = min(passing, key=lambda r: r[0])
                logger.info(f"试验 {index} 通过（距离上界 {weight}）")
                return plan.with_graph(plan.graph.with_edges(edges))
    report = {"trial": best[0], "weight": best[1], "edges": best[2]} if best is not None else {}
    msg = f"随机扩张在 {spec.budget} 次试验内未达到目标距离 {spec.target}"
    raise ExpansionSearchError(msg, report)
