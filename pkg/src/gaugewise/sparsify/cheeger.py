"""图的 Cheeger 常数：小图精确枚举，大图用 Laplacian 谱下界."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import networkx as nx
import numpy as np
from scipy.sparse.linalg import eigsh

from gaugewise.config import Settings, get_settings
from gaugewise.errors import BudgetExceededError, InvalidInputError
from gaugewise.gauging import GaugingGraph

logger = logging.getLogger(__name__)

CheegerMode = Literal["exact", "spectral"]

# 稠密特征值分解的顶点数上限
_DENSE_LIMIT = 400
_CHUNK = 1 << 16


@dataclass(frozen=True)
class CheegerResult:
    """Cheeger 常数 h(G) = min_{0<|S|≤|V|/2} |∂S|/|S|.

    exact 模式给出取到最小值的顶点集 subset；spectral 模式给出 λ₂/2，
    只是下界（lower_bound 为 True）。
    """

    value: float
    mode: CheegerMode
    subset: tuple[int, ...] = ()
    ratio: Fraction | None = None
    lambda2: float | None = None

    @property
    def lower_bound(self) -> bool:
        return self.mode == "spectral"


def _edge_arrays(graph: GaugingGraph) -> list[np.ndarray]:
    return [np.array(e, dtype=np.uint64) for e in graph.edges]


def _scan(edges: list[np.ndarray], nv: int, start: int, stop: int) -> tuple[float, int] | None:
    """扫描 [start, stop) 内的顶点子集掩码，返回 (最小比值, 掩码)."""
    best: tuple[float, int] | None = None
    half = nv // 2
    for lo in range(start, stop, _CHUNK):
        masks = np.arange(lo, min(lo + _CHUNK, stop), dtype=np.uint64)
        sizes = np.bitwise_count(masks).astype(np.int64)
        keep = (sizes >= 1) & (sizes <= half)
        if not keep.any():
            continue
        masks, sizes = masks[keep], sizes[keep]
        boundary = np.zeros(masks.size, dtype=np.int64)
        for edge in edges:
            inside = np.zeros(masks.size, dtype=np.int64)
            for v in edge:
                inside += ((masks >> v) & np.uint64(1)).astype(np.int64)
            boundary += ((inside > 0) & (inside < edge.size)).astype(np.int64)
        ratios = boundary / sizes
        idx = int(np.argmin(ratios))
        candidate = (float(ratios[idx]), int(masks[idx]))
        if best is None or candidate[0] < best[0]:
            best = candidate
    return best


def cheeger_exact(graph: GaugingGraph, settings: Settings | None = None) -> CheegerResult:
    """枚举所有 |S| ≤ |V|/2 的非空顶点集，子集空间按线程分片."""
    settings = settings or get_settings()
    nv = graph.num_vertices
    if nv < 2:
        msg = "Cheeger 常数需要至少 2 个顶点"
        raise InvalidInputError(msg)
    if nv > settings.cheeger_exact_max_vertices:
        msg = f"精确 Cheeger 枚举限 {settings.cheeger_exact_max_vertices} 个顶点，图有 {nv} 个"
        raise BudgetExceededError(msg)
    edges = _edge_arrays(graph)
    total = 1 << nv
    shards = max(1, settings.search_shards)
    bounds = [(total * s // shards, total * (s + 1) // shards) for s in range(shards)]
    logger.info(f"精确 Cheeger: {nv} 个顶点，{total} 个子集，{shards} 个分片")
    with ThreadPoolExecutor(max_workers=settings.worker_threads) as pool:
        results = list(pool.map(lambda b: _scan(edges, nv, b[0], b[1]), bounds))
    best: tuple[float, int] | None = None
    for found in results:
        if found is not None and (best is None or found[0] < best[0]):
            best = found
    assert best is not None
    mask = best[1]
    subset = tuple(v for v in range(nv) if (mask >> v) & 1)
    ratio = Fraction(_boundary_size(graph, set(subset)), len(subset))
    return CheegerResult(float(ratio), "exact", subset, ratio)


def _boundary_size(graph: GaugingGraph, subset: set[int]) -> int:
    count = 0
    for edge in graph.edges:
        inside = sum(1 for v in edge if v in subset)
        if 0 < inside < len(edge):
            count += 1
    return count


def _laplacian(graph: GaugingGraph) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(range(graph.num_vertices))
    for edge in graph.edges:
        # 超边按团展开
        for i, u in enumerate(edge):
            for v in edge[i + 1 :]:
                g.add_edge(u, v)
    return g


def cheeger_spectral(graph: GaugingGraph) -> CheegerResult:
    """组合 Laplacian 的第二小特征值 λ₂，下界 h ≥ λ₂/2."""
    nv = graph.num_vertices
    if nv < 2:
        msg = "Cheeger 常数需要至少 2 个顶点"
        raise InvalidInputError(msg)
    lap = nx.laplacian_matrix(_laplacian(graph), nodelist=range(nv)).astype(float)
    if nv <= _DENSE_LIMIT:
        eigs = np.linalg.eigvalsh(lap.toarray())
        lam2 = float(np.sort(eigs)[1])
    else:
        vals = eigsh(lap, k=2, which="SM", return_eigenvectors=False)
        lam2 = float(np.sort(vals)[1])
    lam2 = max(lam2, 0.0)
    logger.debug(f"谱下界: λ₂ = {lam2:.6f}")
    return CheegerResult(lam2 / 2, "spectral", lambda2=lam2)


def cheeger(graph: GaugingGraph, mode: CheegerMode | None = None, settings: Settings | None = None) -> CheegerResult:
    """按模式计算 Cheeger 常数；未指定模式时小图精确、大图取谱下界."""
    settings = settings or get_settings()
    if mode is None:
        mode = "exact" if graph.num_vertices <= settings.cheeger_exact_max_vertices else "spectral"
    if mode == "exact":
        return cheeger_exact(graph, settings)
    if mode == "spectral":
        return cheeger_spectral(graph)
    msg = f"未知模式: {mode}"
    raise InvalidInputError(msg)
