"""常见构造：梯形格点手术、Shor 式 GHZ 测量、CSS 态制备与多层超图."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from gaugewise.codes import CssCode, StabilizerCode
from gaugewise.errors import InvalidInputError, PlanError
from gaugewise.f2 import BitMatrix
from gaugewise.gauging.cycles import select_flux_checks
from gaugewise.gauging.deform import hypergraph_plan
from gaugewise.gauging.graph import GaugingGraph
from gaugewise.gauging.plan import GaugingPlan, basis_change_to_x, restricted_z_support
from gaugewise.gauging.synthesis import route_paths
from gaugewise.pauli import PauliOp

logger = logging.getLogger(__name__)


@dataclass
class Recipe:
    """构造结果：被测量的码与方案."""

    code: StabilizerCode
    plan: GaugingPlan


def direct_sum(a: StabilizerCode, b: StabilizerCode) -> StabilizerCode:
    """两个码的直和，b 的比特排在 a 之后."""
    n = a.n + b.n
    if isinstance(a, CssCode) and isinstance(b, CssCode):
        hx = BitMatrix.from_supports(
            [*a.hx.supports(), *([q + a.n for q in s] for s in b.hx.supports())], n
        )
        hz = BitMatrix.from_supports(
            [*a.hz.supports(), *([q + a.n for q in s] for s in b.hz.supports())], n
        )
        return CssCode(
            hx,
            hz,
            x_labels=[f"a.{lab}" for lab in a.x_labels] + [f"b.{lab}" for lab in b.x_labels],
            z_labels=[f"a.{lab}" for lab in a.z_labels] + [f"b.{lab}" for lab in b.z_labels],
            name=f"{a.name}+{b.name}",
        )
    checks = [c.embedded(n, list(range(a.n))) for c in a.checks]
    checks += [c.embedded(n, list(range(a.n, n))) for c in b.checks]
    labels = [f"a.{lab}" for lab in a.labels] + [f"b.{lab}" for lab in b.labels]
    return StabilizerCode(n, checks, labels, name=f"{a.name}+{b.name}")


def _finish(code: StabilizerCode, plan: GaugingPlan) -> GaugingPlan:
    routed = route_paths(plan, code, "shortest")
    routed.matching = dict(routed.paths)
    return select_flux_checks(routed, code)


def ladder(
    code_a: StabilizerCode,
    logical_a: PauliOp,
    logical_b: PauliOp,
    code_b: StabilizerCode | None = None,
) -> Recipe:
    """梯形图：两条支撑各自连成轨道，对应位置的比特用横档相连.

    code_b 为 None 时两个逻辑算符作用在同一个码上，支撑必须不相交。
    """
    if code_b is not None:
        code = direct_sum(code_a, code_b)
        la = logical_a.embedded(code.n, list(range(code_a.n)))
        lb = logical_b.embedded(code.n, list(range(code_a.n, code.n)))
    else:
        code, la, lb = code_a, logical_a, logical_b
    sa = basis_change_to_x(code, la)[1].support
    sb = basis_change_to_x(code, lb)[1].support
    if len(sa) != len(sb):
        msg = f"梯形图两侧支撑长度不一致: {len(sa)} 与 {len(sb)}"
        raise PlanError(msg)
    if set(sa) & set(sb):
        msg = "梯形图两侧的逻辑算符作用在相同的比特上"
        raise PlanError(msg)
    logical = la * lb
    support = sorted([*sa, *sb])
    vertex_of = {q: v for v, q in enumerate(support)}
    edges: list[tuple[int, int]] = []
    for side in (sa, sb):
        edges.extend((vertex_of[p], vertex_of[q]) for p, q in zip(side, side[1:], strict=False))
    edges.extend((vertex_of[p], vertex_of[q]) for p, q in zip(sa, sb, strict=True))
    graph = GaugingGraph(support, edges)
    logger.info(f"梯形图: {len(support)} 个顶点，{len(edges)} 条边")
    return Recipe(code, _finish(code, GaugingPlan(logical, graph)))


def shor(code: StabilizerCode, logical: PauliOp, dummy_edges: Sequence[Sequence[int]] | None = None) -> Recipe:
    """每个支撑比特挂一个哑顶点，哑顶点之间按给定的连通图相连（默认为路径）."""
    support = basis_change_to_x(code, logical)[1].support
    w = len(support)
    pairs = [tuple(e) for e in dummy_edges] if dummy_edges is not None else [(i, i + 1) for i in range(w - 1)]
    dummy_graph = GaugingGraph([None] * w, pairs) if w else None
    if dummy_graph is not None and w > 1 and not dummy_graph.is_connected():
        msg = "哑顶点图必须连通"
        raise PlanError(msg)
    bindings: list[int | None] = [*support, *([None] * w)]
    edges = [(i, w + i) for i in range(w)] + [(w + a, w + b) for a, b in pairs]
    graph = GaugingGraph(bindings, edges)
    return Recipe(code, _finish(code, GaugingPlan(logical, graph)))


def css_init(code: CssCode) -> Recipe:
    """|0⟩^n 上测量全部 X 型检查：每个 X 检查一个哑顶点，每个比特一条超边.

    方案作用于零比特的平凡码，边比特就是物理比特，配合 keep_edges 使用。
    """
    trivial = StabilizerCode(0, [], name="empty")
    edges = [tuple(int(i) for i in np.flatnonzero(code.hx.to_dense()[:, q])) for q in range(code.n)]
    labels = list(code.x_labels)
    graph = GaugingGraph([None] * code.hx.rows, edges, labels=labels)
    plan = hypergraph_plan(trivial, PauliOp.identity(0), graph)
    return Recipe(trivial, plan)


def ckbb(code: StabilizerCode, logical: PauliOp, layers: int) -> Recipe:
    """多层超图：逻辑支撑复制 layers 层哑顶点，每层放置受限 Z 检查超边，层间竖直相连."""
    if layers < 0:
        msg = f"层数必须 ≥ 0，得到 {layers}"
        raise InvalidInputError(msg)
    xcode, xlogical, _ = basis_change_to_x(code, logical)
    support = xlogical.support
    w = len(support)
    index = {q: i for i, q in enumerate(support)}
    restricted: list[tuple[str, list[int]]] = []
    for label, check in zip(xcode.labels, xcode.checks, strict=True):
        rz = restricted_z_support(check, support)
        if rz:
            restricted.append((label, [index[q] for q in rz]))
    bindings: list[int | None] = [*support, *([None] * (w * layers))]
    edges: list[tuple[int, ...]] = []
    paths: dict[str, list[int]] = {}
    for layer in range(layers + 1):
        for label, local in restricted:
            if layer == 0:
                paths[label] = [len(edges)]
            edges.append(tuple(layer * w + i for i in local))
    for layer in range(layers):
        edges.extend((layer * w + i, (layer + 1) * w + i) for i in range(w))
    graph = GaugingGraph(bindings, edges)
    logger.info(f"多层超图: {layers + 1} 层，{graph.num_vertices} 个顶点，{graph.num_edges} 条超边")
    return Recipe(code, hypergraph_plan(code, logical, graph, paths=paths))


_RECIPES: dict[str, Any] = {"ladder": ladder, "shor": shor, "css-init": css_init, "ckbb": ckbb}


def recipe_plan(kind: str, *args: Any, **kwargs: Any) -> Recipe:
    """按名称构造方案：ladder、shor、css-init 或 ckbb."""
    builder = _RECIPES.get(kind)
    if builder is None:
        msg = f"未知构造: {kind}（可选 {sorted(_RECIPES)}）"
        raise InvalidInputError(msg)
    return builder(*args, **kwargs)
