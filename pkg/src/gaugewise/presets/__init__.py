"""内置方案：gross 与 double gross 码上 X̄ 的规范化测量."""

import logging
from collections.abc import Callable
from importlib import resources

import numpy as np
from pydantic import BaseModel

from gaugewise.codes import (
    BBCode,
    LogicalKind,
    bb_logical,
    double_gross_code,
    format_monomial,
    gross_code,
    parse_monomial,
)
from gaugewise.errors import InvalidInputError
from gaugewise.gauging import (
    GaugingGraph,
    GaugingPlan,
    Recipe,
    add_expander_edges,
    edges_for_vertex_cycle,
    initial_plan,
)
from gaugewise.pauli import PauliOp

logger = logging.getLogger(__name__)

_CODES: dict[str, Callable[[], BBCode]] = {"gross": gross_code, "double-gross": double_gross_code}
_FILES = {"gross": "gross.json", "double-gross": "double_gross.json"}


class PresetLogical(BaseModel):
    """被测量的逻辑算符：种类与单项式 α."""

    kind: LogicalKind = "X"
    alpha: str = "1"


class PresetDocument(BaseModel):
    """预置方案文件."""

    name: str
    code: str
    logical: PresetLogical
    extra_edges: list[tuple[str, str]]
    cycles: list[list[str]]


def preset_names() -> list[str]:
    return sorted(_FILES)


def load_preset(name: str) -> PresetDocument:
    if name not in _FILES:
        msg = f"未知预置方案: {name}（可选 {preset_names()}）"
        raise InvalidInputError(msg)
    text = resources.files(__name__).joinpath(_FILES[name]).read_text(encoding="utf-8")
    return PresetDocument.model_validate_json(text)


def preset_recipe(name: str) -> Recipe:
    """按预置文件重建码与方案：匹配边、给定扩张边与给定通量环."""
    doc = load_preset(name)
    code = _CODES[doc.code]()
    logical = bb_logical(code, parse_monomial(doc.logical.alpha), doc.logical.kind)
    plan = initial_plan(code, logical)
    vertex_of = plan.graph.vertex_of_qubit()

    def vertex(mono: str) -> int:
        q = code.l_qubit(parse_monomial(mono))
        if q not in vertex_of:
            msg = f"单项式 {mono} 不在逻辑算符支撑中"
            raise InvalidInputError(msg)
        return vertex_of[q]

    plan = add_expander_edges(plan, [(vertex(a), vertex(b)) for a, b in doc.extra_edges])
    used: dict[int, int] = {}
    cycles = [edges_for_vertex_cycle(plan.graph, [vertex(m) for m in cyc], used) for cyc in doc.cycles]
    plan = plan.with_cycles(cycles)
    plan.graph.labels = [code.qubit_label(q) for q in plan.graph.bindings if q is not None]
    logger.info(f"预置方案 {name}: {plan.graph.num_edges} 条边，{len(cycles)} 个通量环")
    return Recipe(code, plan)


def preset_plan(name: str) -> GaugingPlan:
    return preset_recipe(name).plan


def mirror_plan(code: BBCode, plan: GaugingPlan) -> GaugingPlan:
    """借助 BB 码的对称性 L[μ] ↔ R[μ⁻¹]、X[μ] ↔ Z[μ⁻¹] 把方案搬到对偶的逻辑算符上.

    X̄_α 的方案被搬成 Z̄′_α⁻¹ 的方案，图、通量环与路径保持不变。
    """
    size = code.size

    def qubit(q: int) -> int:
        mono = code.inverse(code.monomial(q % size))
        return code.r_qubit(mono) if q < size else code.l_qubit(mono)

    def label(text: str) -> str:
        kind, mono = text[0], parse_monomial(text[2:-1])
        return f"{'Z' if kind == 'X' else 'X'}[{format_monomial(code.inverse(mono))}]"

    # 对称性同时交换 X 与 Z
    mapped = PauliOp.from_support(
        code.n,
        [qubit(int(q)) for q in np.flatnonzero(plan.logical.z)],
        [qubit(int(q)) for q in np.flatnonzero(plan.logical.x)],
    )
    graph = GaugingGraph(
        [qubit(q) if q is not None else None for q in plan.graph.bindings],
        list(plan.graph.edges),
        plan.graph.root,
    )
    return GaugingPlan(
        mapped,
        graph,
        [list(c) for c in plan.cycles],
        {label(k): list(v) for k, v in plan.paths.items()},
        {label(k): list(v) for k, v in plan.matching.items()},
    )


__all__ = [
    "PresetDocument",
    "PresetLogical",
    "load_preset",
    "mirror_plan",
    "preset_names",
    "preset_plan",
    "preset_recipe",
]
