"""环空间：环基、冗余环维数、通量检查选取与边界映射."""

import logging
from collections.abc import Iterable, Sequence
from typing import NamedTuple

from gaugewise.codes import RowSpace, StabilizerCode
from gaugewise.config import get_settings
from gaugewise.errors import InvalidInputError, PlanError, VerificationError
from gaugewise.f2 import BitMatrix, left_nullspace, rank, row_nullity
from gaugewise.gauging.graph import GaugingGraph
from gaugewise.gauging.plan import GaugingPlan, basis_change_to_x, restricted_z_support
from gaugewise.pauli import PauliOp

logger = logging.getLogger(__name__)


def _edge_mask(edges: Iterable[int]) -> int:
    mask = 0
    for e in edges:
        mask ^= 1 << e
    return mask


def _mask_edges(mask: int) -> list[int]:
    out: list[int] = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def cycle_space_dim(graph: GaugingGraph) -> int:
    """连通图的环空间维数 |E| − |V| + 1."""
    return graph.num_edges - graph.num_vertices + 1


def short_cycles(graph: GaugingGraph, max_length: int) -> list[list[int]]:
    """长度不超过 max_length 的全部简单环（边下标表示，含重边构成的 2-环）."""
    incident = graph.incident_edges()
    found: set[int] = set()
    for start in range(graph.num_vertices):
        # 只沿比 start 大的顶点走，每个环只从其最小顶点出发
        stack: list[tuple[int, list[int], set[int]]] = [(start, [], {start})]
        while stack:
            u, path, seen = stack.pop()
            for e in incident[u]:
                if path and e == path[-1]:
                    continue
                a, b = graph.edges[e]
                w = b if a == u else a
                if w == start and path:
                    found.add(_edge_mask([*path, e]))
                elif w > start and w not in seen and len(path) + 1 < max_length:
                    stack.append((w, [*path, e], seen | {w}))
    cycles = [_mask_edges(m) for m in found]
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


def fundamental_cycles(graph: GaugingGraph) -> list[list[int]]:
    """BFS 生成树的基本环."""
    tree = graph.spanning_tree()
    tree_edges = {idx for _, idx in tree.values()}

    def to_root(v: int) -> int:
        mask = 0
        while v in tree:
            v, idx = tree[v]
            mask ^= 1 << idx
        return mask

    cycles: list[list[int]] = []
    for idx, (u, v) in enumerate(graph.edges):
        if idx in tree_edges:
            continue
        cycles.append(_mask_edges(to_root(u) ^ to_root(v) ^ (1 << idx)))
    return cycles


def _candidate_pool(graph: GaugingGraph, max_length: int) -> list[list[int]]:
    seen: set[int] = set()
    pool: list[list[int]] = []
    for cycle in [*short_cycles(graph, max_length), *fundamental_cycles(graph)]:
        mask = _edge_mask(cycle)
        if mask not in seen:
            seen.add(mask)
            pool.append(cycle)
    pool.sort(key=lambda c: (len(c), c))
    return pool


def cycle_basis(graph: GaugingGraph, max_length: int | None = None) -> BitMatrix:
    """环基：短环候选与生成树基本环按 (权重, 边) 排序后贪心取线性无关者.

    结果有 |E| − |V| + 1 行，每行是一个环。
    """
    graph.require_connected()
    if graph.is_hypergraph:
        msg = "超图的环空间请用关联矩阵零空间计算"
        raise InvalidInputError(msg)
    length = max_length if max_length is not None else get_settings().cycle_search_length
    target = cycle_space_dim(graph)
    space = RowSpace()
    chosen: list[list[int]] = []
    for cycle in _candidate_pool(graph, length):
        if len(chosen) == target:
            break
        if space.add(_edge_mask(cycle)):
            chosen.append(cycle)
    if len(chosen) != target:
        msg = f"环基只找到 {len(chosen)} 个环，应为 {target}"
        raise VerificationError(msg)
    logger.debug(f"环基: {target} 个环，权重 {[len(c) for c in chosen]}")
    return BitMatrix.from_supports(chosen, graph.num_edges)


def _split_checks(code: StabilizerCode, support: Sequence[int]) -> tuple[list[int], list[int]]:
    """按在逻辑支撑上是否有 Z 分量把检查分成 S 与 C."""
    touched: list[int] = []
    untouched: list[int] = []
    for i, check in enumerate(code.checks):
        (touched if restricted_z_support(check, support) else untouched).append(i)
    return touched, untouched


def redundant_cycle_dim(code: StabilizerCode, logical: PauliOp) -> int:
    """检查关系诱导的冗余环维数 row_nullity(全部检查) − row_nullity(C)."""
    xcode, xlogical, _ = basis_change_to_x(code, logical)
    _, untouched = _split_checks(xcode, xlogical.support)
    full = xcode.symplectic
    rest = full.select_rows(untouched)
    return row_nullity(full) - row_nullity(rest)


def relation_cycles(plan: GaugingPlan, code: StabilizerCode) -> BitMatrix:
    """检查关系 u 在 S 上的限制经形变路径得到的环 Σ u_j γ_j."""
    xcode = plan.basis_change.apply_code(code)
    support = plan.x_logical.support
    touched, _ = _split_checks(xcode, support)
    missing = [xcode.labels[i] for i in touched if xcode.labels[i] not in plan.paths]
    if missing:
        msg = f"方案缺少检查 {missing[0]} 的形变路径"
        raise PlanError(msg)
    relations = left_nullspace(xcode.symplectic)
    out: list[list[int]] = []
    for u in relations.to_dense():
        mask = 0
        for i in touched:
            if u[i]:
                mask ^= _edge_mask(plan.paths[xcode.labels[i]])
        if mask:
            out.append(_mask_edges(mask))
    return BitMatrix.from_supports(out, plan.graph.num_edges)


def select_flux_checks(
    plan: GaugingPlan,
    code: StabilizerCode,
    basis: BitMatrix | None = None,
    max_length: int | None = None,
) -> GaugingPlan:
    """去掉由检查关系蕴含的环，按权重升序保留其余环作为通量检查."""
    graph = plan.graph
    graph.require_connected()
    length = max_length if max_length is not None else get_settings().cycle_search_length
    full_basis = basis if basis is not None else cycle_basis(graph, length)
    target = cycle_space_dim(graph)
    implied = relation_cycles(plan, code)
    space = RowSpace(_edge_mask(r) for r in implied.supports())
    implied_rank = len(space)
    pool = _candidate_pool(graph, length)
    seen = {_edge_mask(c) for c in pool}
    pool.extend(c for c in full_basis.supports() if _edge_mask(c) not in seen)
    pool.sort(key=lambda c: (len(c), c))
    retained: list[list[int]] = []
    for cycle in pool:
        if len(space) == target:
            break
        if space.add(_edge_mask(cycle)):
            retained.append(cycle)
    if len(space) != target:
        msg = f"通量检查选取不足：得到 {len(space)} 维，应为 {target} 维"
        raise PlanError(msg)
    logger.info(f"通量检查: 环空间 {target} 维，关系蕴含 {implied_rank} 维，保留 {len(retained)} 个环")
    return plan.with_cycles(retained)


def drop_implied_cycles(
    plan: GaugingPlan, code: StabilizerCode, candidates: Sequence[Sequence[int]]
) -> list[list[int]]:
    """去掉检查关系蕴含的候选环，按权重升序保留线性无关者."""
    space = RowSpace(_edge_mask(r) for r in relation_cycles(plan, code).supports())
    implied_rank = len(space)
    retained: list[list[int]] = []
    for cycle in sorted((sorted(c) for c in candidates), key=lambda c: (len(c), c)):
        if space.add(_edge_mask(cycle)):
            retained.append(cycle)
    logger.info(f"通量检查: 候选 {len(candidates)} 个，关系蕴含 {implied_rank} 维，保留 {len(retained)} 个环")
    return retained


class BoundaryMaps(NamedTuple):
    """链复形 C₂ → C₁ → C₀ 的边界与上边界映射."""

    d1: BitMatrix  # ∂：顶点 × 边
    delta1: BitMatrix  # δ = ∂ᵀ
    d2: BitMatrix  # ∂₂：边 × 环
    delta2: BitMatrix  # δ₂ = ∂₂ᵀ

    def composes_to_zero(self) -> bool:
        return (self.d1 @ self.d2).is_zero()

    def is_exact(self) -> bool:
        """im δ = ker δ₂，等价于 δ₂δ = 0 且 rank δ + rank δ₂ = |E|."""
        return self.composes_to_zero() and rank(self.delta1) + rank(self.delta2) == self.d1.cols


def boundary_maps(graph: GaugingGraph, cycles: BitMatrix | Sequence[Sequence[int]]) -> BoundaryMaps:
    """由图与环集合构造边界映射."""
    cyc = cycles if isinstance(cycles, BitMatrix) else BitMatrix.from_supports(cycles, graph.num_edges)
    if cyc.cols != graph.num_edges:
        msg = f"环矩阵列数 {cyc.cols} 与边数 {graph.num_edges} 不一致"
        raise InvalidInputError(msg)
    d1 = graph.incidence()
    return BoundaryMaps(d1, d1.T, cyc.T, cyc)


def edges_for_vertex_cycle(graph: GaugingGraph, vertices: Sequence[int], used: dict[int, int] | None = None) -> list[int]:
    """把顶点序列（首尾相接）表示的环转成边下标.

    重边中选取目前使用次数最少的一条（平局取下标最小），同一环内每条边至多用一次。
    """
    counts = used if used is not None else {}
    chosen: list[int] = []
    n = len(vertices)
    for i in range(n):
        u, v = vertices[i], vertices[(i + 1) % n]
        options = [e for e in graph.edges_between(u, v) if e not in chosen]
        if not options:
            msg = f"顶点 {u} 与 {v} 之间没有可用的边"
            raise PlanError(msg)
        best = min(options, key=lambda e: (counts.get(e, 0), e))
        chosen.append(best)
        counts[best] = counts.get(best, 0) + 1
    if graph.boundary(chosen):
        msg = f"顶点序列 {list(vertices)} 不构成闭合环"
        raise PlanError(msg)
    return chosen
