"""环的剖分与分层去拥塞.

基图复制 R 份叠成 0..R 层，同一顶点的相邻层副本用竖直边相连。
过重或过于拥挤的通量环被抬到某个 ℓ ≥ 1 层并在那里剖分成三角形（或四边形），
第 0 层不做剖分，形变检查的路径仍然走第 0 层。
"""

import logging
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

from gaugewise.codes import StabilizerCode
from gaugewise.config import Settings, get_settings
from gaugewise.errors import InvalidInputError, PlanError
from gaugewise.gauging import DeformedCode, GaugingGraph, GaugingPlan, PlanDocument, deform

logger = logging.getLogger(__name__)

CellulationMode = Literal["triangles", "squares"]


@dataclass(frozen=True)
class Cellulation:
    """环的剖分：弦（顶点对）与各块（按环序排列的顶点）."""

    chords: list[tuple[int, int]]
    pieces: list[tuple[int, ...]]


def _triangle_positions(n: int) -> tuple[list[tuple[int, int]], list[tuple[int, ...]]]:
    # 之字形顺序 0, 1, N−1, 2, N−2, ...
    order = [0]
    lo, hi = 1, n - 1
    while lo <= hi:
        order.append(lo)
        lo += 1
        if lo <= hi:
            order.append(hi)
            hi -= 1
    chords = [(order[i], order[i + 1]) for i in range(1, n - 2)]
    pieces = [(order[i], order[i + 1], order[i + 2]) for i in range(n - 2)]
    return chords, pieces


def _square_positions(n: int) -> tuple[list[tuple[int, int]], list[tuple[int, ...]]]:
    chords: list[tuple[int, int]] = []
    pieces: list[tuple[int, ...]] = []
    i = 1
    while (n - 1 - i) - i >= 2:
        chords.append((i, n - 1 - i))
        pieces.append((i - 1, i, n - 1 - i, n - i))
        i += 1
    lo, hi = i - 1, n - i
    pieces.append(tuple(range(lo, hi + 1)))
    return chords, pieces


def cellulate(cycle: Sequence[int], mode: CellulationMode = "triangles") -> Cellulation:
    """把按环序给出的顶点列表剖分成三角形（N−3 条弦）或权重 ≤ 4 的四边形."""
    n = len(cycle)
    if n < 3:
        msg = f"剖分要求环长 ≥ 3，得到 {n}"
        raise InvalidInputError(msg)
    if mode == "triangles":
        chords, pieces = _triangle_positions(n)
    elif mode == "squares":
        chords, pieces = _square_positions(n)
    else:
        msg = f"未知剖分方式: {mode}"
        raise InvalidInputError(msg)
    return Cellulation(
        [(cycle[a], cycle[b]) for a, b in chords],
        [tuple(cycle[p] for p in piece) for piece in pieces],
    )


def closed_walks(graph: GaugingGraph, cycle: Sequence[int]) -> list[tuple[list[int], list[int]]]:
    """把闭合边集分解成简单闭合回路，每条回路返回 (顶点序列, 边序列).

    边序列的第 i 条边连接第 i 与第 i+1 个顶点（末条边回到起点）。
    """
    remaining = set(cycle)
    walks: list[tuple[list[int], list[int]]] = []
    incident: dict[int, list[int]] = {}
    for e in sorted(remaining):
        if len(graph.edges[e]) != 2:
            msg = f"边 {e} 是超边，无法分解为回路"
            raise InvalidInputError(msg)
        for v in graph.edges[e]:
            incident.setdefault(v, []).append(e)
    while remaining:
        start = graph.edges[min(remaining)][0]
        verts, edges = [start], []
        pos = {start: 0}
        cur = start
        while True:
            nxt_edge = next((e for e in incident[cur] if e in remaining), None)
            if nxt_edge is None:
                if edges:
                    msg = f"边集在顶点 {cur} 处不闭合"
                    raise PlanError(msg)
                break
            remaining.discard(nxt_edge)
            a, b = graph.edges[nxt_edge]
            nxt = b if a == cur else a
            edges.append(nxt_edge)
            if nxt in pos:
                i = pos[nxt]
                walks.append((verts[i:], edges[i:]))
                for v in verts[i + 1 :]:
                    del pos[v]
                verts, edges = verts[: i + 1], edges[:i]
            else:
                pos[nxt] = len(verts)
                verts.append(nxt)
            cur = nxt
    return walks


@dataclass
class LayeredGraph:
    """分层稀疏化图.

    第 ℓ 层顶点 v 的下标为 ℓ·|V| + v；第 0 层的边保持原下标，
    因此原方案的路径可以原样沿用。assignment[i] 是第 i 个环所在的层，
    0 表示留在第 0 层不剖分。
    """

    base: GaugingPlan
    layers: int
    assignment: list[int]
    cap: int
    mode: CellulationMode
    graph: GaugingGraph = field(init=False)
    cycles: list[list[int]] = field(init=False)
    squares: list[list[int]] = field(init=False)
    pieces: list[list[int]] = field(init=False)
    chords: list[int] = field(init=False)

    def __post_init__(self) -> None:
        self._build()

    def _build(self) -> None:
        base = self.base.graph
        nv, ne, depth = base.num_vertices, base.num_edges, self.layers
        bindings: list[int | None] = [*base.bindings, *([None] * (nv * depth))]
        labels = [base.vertex_label(v) for v in range(nv)]
        labels += [f"{base.vertex_label(v)}@{layer}" for layer in range(1, depth + 1) for v in range(nv)]
        edges: list[tuple[int, ...]] = []
        for layer in range(depth + 1):
            edges.extend(tuple(layer * nv + v for v in e) for e in base.edges)

        def copy(e: int, layer: int) -> int:
            return layer * ne + e

        vertical_start = len(edges)
        for layer in range(depth):
            edges.extend((layer * nv + v, (layer + 1) * nv + v) for v in range(nv))

        def vertical(v: int, layer: int) -> int:
            return vertical_start + layer * nv + v

        self.squares = []
        for layer in range(depth):
            for e, (u, v) in enumerate(base.edges):
                self.squares.append([copy(e, layer), vertical(v, layer), copy(e, layer + 1), vertical(u, layer)])

        kept: list[list[int]] = []
        self.pieces, self.chords = [], []
        for cycle, layer in zip(self.base.cycles, self.assignment, strict=True):
            if layer == 0:
                kept.append(list(cycle))
                continue
            for verts, walk in closed_walks(base, cycle):
                lifted = [copy(e, layer) for e in walk]
                n = len(verts)
                if n < 3:
                    self.pieces.append(lifted)
                    continue
                cell = cellulate(list(range(n)), self.mode)
                pair_edge: dict[frozenset[int], int] = {}
                for i in range(n):
                    pair_edge[frozenset((i, (i + 1) % n))] = lifted[i]
                for a, b in cell.chords:
                    pair_edge[frozenset((a, b))] = len(edges)
                    self.chords.append(len(edges))
                    edges.append((layer * nv + verts[a], layer * nv + verts[b]))
                for piece in cell.pieces:
                    k = len(piece)
                    self.pieces.append([pair_edge[frozenset((piece[j], piece[(j + 1) % k]))] for j in range(k)])
        self.cycles = [*kept, *self.squares, *self.pieces]
        self.graph = GaugingGraph(bindings, edges, base.root, labels)

    @property
    def num_lifted(self) -> int:
        return sum(1 for layer in self.assignment if layer > 0)

    def flux_weights(self) -> list[int]:
        return [len(c) for c in self.cycles]

    def edge_loads(self) -> dict[int, int]:
        """分层图每条边参与的通量检查数（含方块、剖分块与第 0 层保留的环）."""
        return dict(Counter(e for cycle in self.cycles for e in cycle))

    def to_plan(self) -> GaugingPlan:
        """分层图上的方案：路径与匹配沿用第 0 层."""
        if self.layers == 0:
            return self.base
        return GaugingPlan(
            self.base.logical,
            self.graph,
            [list(c) for c in self.cycles],
            {k: list(v) for k, v in self.base.paths.items()},
            {k: list(v) for k, v in self.base.matching.items()},
        )

    def layers_block(self) -> dict[str, Any]:
        return {"R": self.layers, "assignment": list(self.assignment), "cap": self.cap, "mode": self.mode}

    def to_document(self) -> PlanDocument:
        """基方案文档加上 layers 扩展块."""
        doc = self.base.to_document()
        doc.layers = self.layers_block()
        return doc

    @classmethod
    def from_document(cls, doc: PlanDocument) -> "LayeredGraph":
        if doc.layers is None:
            msg = "方案文档没有 layers 扩展块"
            raise InvalidInputError(msg)
        block = doc.layers
        base = GaugingPlan.from_document(doc.model_copy(update={"layers": None}))
        assignment = [int(a) for a in block["assignment"]]
        if len(assignment) != len(base.cycles):
            msg = f"layers.assignment 有 {len(assignment)} 项，方案有 {len(base.cycles)} 个环"
            raise InvalidInputError(msg)
        return cls(base, int(block["R"]), assignment, int(block["cap"]), block.get("mode", "triangles"))


def decongest(
    plan: GaugingPlan,
    cap: int | None = None,
    mode: CellulationMode | None = None,
    settings: Settings | None = None,
) -> LayeredGraph:
    """贪心地把每个环放到使每条边的环参与数不超过 cap 的最低层.

    权重不超过 max_flux_weight 且第 0 层仍有余量的环留在第 0 层，其余抬到 ℓ ≥ 1 层剖分。

    cap 只约束每层上基图环的参与数。剖分后每条层内边副本另外最多属于两个方块，
    每条弦恰好属于两个剖分块，分层图的实际边负载由 LayeredGraph.edge_loads 给出。
    """
    settings = settings or get_settings()
    cap = cap if cap is not None else settings.decongest_cap
    mode = mode or settings.cellulation
    if cap < 1:
        msg = f"环参与数上限必须 ≥ 1，得到 {cap}"
        raise InvalidInputError(msg)
    if plan.graph.is_hypergraph:
        msg = "分层去拥塞只支持普通图"
        raise InvalidInputError(msg)
    loads: list[dict[int, int]] = [{}]
    assignment: list[int] = []
    for cycle in plan.cycles:
        if len(cycle) <= settings.max_flux_weight and all(loads[0].get(e, 0) < cap for e in cycle):
            layer = 0
        else:
            layer = 1
            while layer < len(loads) and any(loads[layer].get(e, 0) >= cap for e in cycle):
                layer += 1
        if layer == len(loads):
            loads.append({})
        for e in cycle:
            loads[layer][e] = loads[layer].get(e, 0) + 1
        assignment.append(layer)
    depth = max(assignment, default=0)
    layered = LayeredGraph(plan, depth, assignment, cap, mode)
    logger.info(
        f"去拥塞: {len(plan.cycles)} 个环中 {layered.num_lifted} 个被抬升，R = {depth}，"
        f"通量检查 {len(layered.cycles)} 个，最大权重 {max(layered.flux_weights(), default=0)}，"
        f"最大边负载 {max(layered.edge_loads().values(), default=0)}"
    )
    return layered


def sparsified_deform(code: StabilizerCode, layered: LayeredGraph, verify: bool = True) -> DeformedCode:
    """在分层图上构造形变码."""
    return deform(code, layered.to_plan(), verify=verify)
