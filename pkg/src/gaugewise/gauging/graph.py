"""规范化测量用的辅助（超）图.

顶点可以绑定原码的一个比特，也可以是不对应任何比特的哑顶点。
边以顶点元组表示：普通图为二元组，超图允许任意大小。允许重边。
"""

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from gaugewise.errors import DisconnectedGraphError, InvalidInputError
from gaugewise.f2 import BitMatrix

logger = logging.getLogger(__name__)


@dataclass
class GaugingGraph:
    """辅助图 G."""

    bindings: list[int | None]
    edges: list[tuple[int, ...]] = field(default_factory=lambda: [])
    root: int = 0
    labels: list[str] | None = None

    def __post_init__(self) -> None:
        self.edges = [tuple(int(v) for v in e) for e in self.edges]
        self.validate()

    def validate(self) -> None:
        nv = self.num_vertices
        bound = [q for q in self.bindings if q is not None]
        if len(set(bound)) != len(bound):
            msg = "非哑顶点必须绑定互不相同的比特"
            raise InvalidInputError(msg)
        if nv and not 0 <= self.root < nv:
            msg = f"根顶点 {self.root} 越界"
            raise InvalidInputError(msg)
        if self.labels is not None and len(self.labels) != nv:
            msg = "顶点标签数与顶点数不一致"
            raise InvalidInputError(msg)
        for idx, edge in enumerate(self.edges):
            if any(not 0 <= v < nv for v in edge):
                msg = f"边 {idx} {edge} 含有不存在的顶点"
                raise InvalidInputError(msg)
            if len(set(edge)) != len(edge):
                msg = f"边 {idx} {edge} 含重复顶点（不允许自环）"
                raise InvalidInputError(msg)

    # ---- 基本属性 ----

    @property
    def num_vertices(self) -> int:
        return len(self.bindings)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def is_hypergraph(self) -> bool:
        return any(len(e) != 2 for e in self.edges)

    def is_dummy(self, v: int) -> bool:
        return self.bindings[v] is None

    @property
    def dummies(self) -> list[int]:
        return [v for v, q in enumerate(self.bindings) if q is None]

    def vertex_of_qubit(self) -> dict[int, int]:
        return {q: v for v, q in enumerate(self.bindings) if q is not None}

    def vertex_label(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        q = self.bindings[v]
        return f"q{q}" if q is not None else f"d{v}"

    def incident_edges(self) -> list[list[int]]:
        """每个顶点关联的边下标."""
        table: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for idx, edge in enumerate(self.edges):
            for v in edge:
                table[v].append(idx)
        return table

    def degrees(self) -> list[int]:
        return [len(es) for es in self.incident_edges()]

    def edges_between(self, u: int, v: int) -> list[int]:
        key = {u, v}
        return [idx for idx, e in enumerate(self.edges) if len(e) == 2 and set(e) == key]

    # ---- 代数结构 ----

    def incidence(self) -> BitMatrix:
        """边界映射 ∂：行为顶点、列为边."""
        dense = np.zeros((self.num_vertices, self.num_edges), dtype=np.uint8)
        for idx, edge in enumerate(self.edges):
            for v in edge:
                dense[v, idx] ^= 1
        return BitMatrix.from_dense(dense, cols=self.num_edges)

    def boundary(self, edge_set: Sequence[int]) -> set[int]:
        """边集合的边界（顶点集合）."""
        out: set[int] = set()
        for idx in edge_set:
            for v in self.edges[idx]:
                out ^= {v}
        return out

    def to_networkx(self) -> nx.MultiGraph:
        """普通图转 networkx 多重图，边 key 为边下标."""
        if self.is_hypergraph:
            msg = "超图不能直接转为 networkx 多重图"
            raise InvalidInputError(msg)
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.num_vertices))
        for idx, (u, v) in enumerate(self.edges):
            g.add_edge(u, v, key=idx)
        return g

    def _connectivity_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.num_vertices))
        for edge in self.edges:
            for a, b in zip(edge, edge[1:], strict=False):
                g.add_edge(a, b)
        return g

    def is_connected(self) -> bool:
        if self.num_vertices == 0:
            return False
        return bool(nx.is_connected(self._connectivity_graph()))

    def require_connected(self) -> None:
        if not self.is_connected():
            parts = nx.number_connected_components(self._connectivity_graph()) if self.num_vertices else 0
            msg = f"辅助图不连通（{parts} 个连通分量）"
            raise DisconnectedGraphError(msg)

    def spanning_tree(self) -> dict[int, tuple[int, int]]:
        """从根出发的 BFS 树：顶点 → (父顶点, 树边下标)."""
        if self.is_hypergraph:
            msg = "超图没有生成树"
            raise InvalidInputError(msg)
        incident = self.incident_edges()
        parent: dict[int, tuple[int, int]] = {}
        seen = {self.root}
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for idx in incident[u]:
                a, b = self.edges[idx]
                w = b if a == u else a
                if w not in seen:
                    seen.add(w)
                    parent[w] = (u, idx)
                    queue.append(w)
        return parent

    # ---- 变换 ----

    def with_edges(self, extra: Sequence[Sequence[int]]) -> "GaugingGraph":
        return GaugingGraph(
            list(self.bindings),
            [*self.edges, *(tuple(e) for e in extra)],
            self.root,
            list(self.labels) if self.labels is not None else None,
        )

    def with_vertices(self, bindings: Sequence[int | None], labels: Sequence[str] | None = None) -> "GaugingGraph":
        """追加顶点（通常是哑顶点）."""
        new_labels = None
        if self.labels is not None or labels is not None:
            old = self.labels if self.labels is not None else [self.vertex_label(v) for v in range(self.num_vertices)]
            extra = list(labels) if labels is not None else [f"d{self.num_vertices + i}" for i in range(len(bindings))]
            new_labels = [*old, *extra]
        return GaugingGraph([*self.bindings, *bindings], list(self.edges), self.root, new_labels)
