"""辅助图准则审计：路径长度、扩张性与通量环权重."""

import logging

from pydantic import BaseModel, Field

from gaugewise.codes import StabilizerCode, tanner_report
from gaugewise.config import Settings, get_settings
from gaugewise.gauging import GaugingPlan, deform
from gaugewise.sparsify.cellulation import LayeredGraph
from gaugewise.sparsify.cheeger import cheeger

logger = logging.getLogger(__name__)


class DesiderataReport(BaseModel):
    """三项准则的度量与判定."""

    num_vertices: int
    num_edges: int
    num_cycles: int
    kappa: int
    cheeger: float
    cheeger_mode: str
    cheeger_lower_bound: bool
    max_cycle_weight: int
    max_deformed_weight: int | None = None
    max_qubit_degree: int | None = None
    kappa_threshold: int
    max_flux_weight: int
    kappa_ok: bool
    expansion_ok: bool
    cycle_weight_ok: bool
    notes: list[str] = Field(default_factory=lambda: [])

    @property
    def passed(self) -> bool:
        return self.kappa_ok and self.expansion_ok and self.cycle_weight_ok


def audit_desiderata(
    plan: GaugingPlan | LayeredGraph,
    code: StabilizerCode | None = None,
    settings: Settings | None = None,
) -> DesiderataReport:
    """审计方案：κ 为最长形变路径，h 在顶点数允许时精确计算，否则给出谱下界."""
    settings = settings or get_settings()
    target = plan.to_plan() if isinstance(plan, LayeredGraph) else plan
    graph = target.graph
    notes: list[str] = []

    kappa = max(target.path_lengths(), default=0)
    if graph.num_vertices >= 2:
        h = cheeger(graph, settings=settings)
        value, mode, lower = h.value, h.mode, h.lower_bound
    else:
        value, mode, lower = 0.0, "exact", False
        notes.append("图少于 2 个顶点，Cheeger 常数按 0 记")
    weights = [len(c) for c in target.cycles]
    max_cycle = max(weights, default=0)

    expansion_ok = value >= 1
    if not expansion_ok:
        if lower:
            notes.append(f"谱下界 {value:.3f} < 1，不能断定 h(G) < 1")
        else:
            notes.append(f"h(G) = {value:.3f} < 1：梯形格点手术等场景允许低扩张")

    max_deformed = max_degree = None
    if code is not None:
        report = tanner_report(deform(code, target).code)
        max_deformed, max_degree = report.max_weight, report.max_degree

    result = DesiderataReport(
        num_vertices=graph.num_vertices,
        num_edges=graph.num_edges,
        num_cycles=len(target.cycles),
        kappa=kappa,
        cheeger=value,
        cheeger_mode=mode,
        cheeger_lower_bound=lower,
        max_cycle_weight=max_cycle,
        max_deformed_weight=max_deformed,
        max_qubit_degree=max_degree,
        kappa_threshold=settings.kappa_threshold,
        max_flux_weight=settings.max_flux_weight,
        kappa_ok=kappa <= settings.kappa_threshold,
        expansion_ok=expansion_ok,
        cycle_weight_ok=max_cycle <= settings.max_flux_weight,
        notes=notes,
    )
    logger.info(
        f"准则审计: κ={kappa}, h={value:.3f}（{mode}）, 最大环权重 {max_cycle}, "
        f"{'通过' if result.passed else '未通过'}"
    )
    return result
