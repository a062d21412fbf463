"""形变码：Gauss 定律检查 A_v、通量检查 B_p、形变检查 s̃ 与未变检查."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from gaugewise.codes import CssCode, RowSpace, StabilizerCode
from gaugewise.codes.stabilizer import bits_to_int
from gaugewise.errors import CommutationError, InvalidInputError, PlanError, VerificationError
from gaugewise.f2 import nullspace, rank, solve
from gaugewise.gauging.cycles import drop_implied_cycles, relation_cycles, select_flux_checks
from gaugewise.gauging.graph import GaugingGraph
from gaugewise.gauging.plan import BasisChange, GaugingPlan, PlanSet, restricted_z_support
from gaugewise.pauli import PauliOp

logger = logging.getLogger(__name__)


@dataclass
class DeformedCode:
    """形变后的码.

    code 的比特先是原码的 n 个比特，再依次是各方案的边比特。
    """

    base: StabilizerCode
    plans: list[GaugingPlan]
    code: StabilizerCode
    gauss_labels: list[str] = field(default_factory=lambda: [])
    flux_labels: list[str] = field(default_factory=lambda: [])
    deformed_labels: list[str] = field(default_factory=lambda: [])
    untouched_labels: list[str] = field(default_factory=lambda: [])
    edge_qubits: list[list[int]] = field(default_factory=lambda: [])
    deformed_from: dict[str, str] = field(default_factory=lambda: {})

    @property
    def plan(self) -> GaugingPlan:
        return self.plans[0]

    @property
    def num_edge_qubits(self) -> int:
        return sum(len(e) for e in self.edge_qubits)

    @property
    def added_checks(self) -> int:
        return len(self.gauss_labels) + len(self.flux_labels)

    @property
    def total_additions(self) -> int:
        """新增检查数与新增比特数之和."""
        return self.added_checks + self.num_edge_qubits

    def checks_of(self, labels: Sequence[str]) -> list[PauliOp]:
        return [self.code.check(lab) for lab in labels]

    def as_css(self) -> CssCode | None:
        return self.code.as_css()

    def summary(self) -> dict[str, int]:
        return {
            "n": self.code.n,
            "k": self.code.k,
            "gauss": len(self.gauss_labels),
            "flux": len(self.flux_labels),
            "deformed": len(self.deformed_labels),
            "untouched": len(self.untouched_labels),
            "edge_qubits": self.num_edge_qubits,
        }


def _as_plan_list(plan: GaugingPlan | PlanSet) -> tuple[list[GaugingPlan], BasisChange]:
    if isinstance(plan, PlanSet):
        return list(plan.plans), plan.basis_change
    return [plan], plan.basis_change


def _independent_logicals(code: StabilizerCode, logicals: Sequence[PauliOp]) -> int:
    space = RowSpace(bits_to_int(c.symplectic()) for c in code.checks)
    before = len(space)
    for op in logicals:
        space.add(bits_to_int(op.symplectic()))
    return len(space) - before


def cycle_space_rank(graph: GaugingGraph) -> int:
    """dim ker ∂，对超图同样适用."""
    return graph.num_edges - rank(graph.incidence())


def counting_identity(graph: GaugingGraph) -> int:
    """|E| − C_full − |V|."""
    return graph.num_edges - cycle_space_rank(graph) - graph.num_vertices


def _check_flux_generates(plan: GaugingPlan, base: StabilizerCode) -> None:
    """保留的环加上检查关系蕴含的环必须张成整个环空间."""
    target = cycle_space_rank(plan.graph)
    if target == 0:
        return
    space = RowSpace(bits_to_int(r) for r in relation_cycles(plan, base).to_dense())
    for cycle in plan.cycles:
        mask = 0
        for e in cycle:
            mask ^= 1 << e
        space.add(mask)
    if len(space) != target:
        msg = f"通量环与检查关系只张成 {len(space)} 维环空间，应为 {target} 维"
        raise PlanError(msg)


def deform(code: StabilizerCode, plan: GaugingPlan | PlanSet, verify: bool = True) -> DeformedCode:
    """按方案构造形变码.

    在使逻辑算符变为 X 型的基下构造，最后把基变换撤回到原码比特上。
    """
    plans, record = _as_plan_list(plan)
    for p in plans:
        if p.logical.n != code.n:
            msg = f"方案的逻辑算符作用于 {p.logical.n} 个比特，码长 {code.n}"
            raise PlanError(msg)
        p.validate()
    xcode = record.apply_code(code)
    n = code.n
    offsets: list[int] = []
    total = n
    for p in plans:
        offsets.append(total)
        total += p.graph.num_edges
    multi = len(plans) > 1

    def tag(prefix: str, i: int, idx: int) -> str:
        return f"{prefix}{i}.{idx}" if multi else f"{prefix}{idx}"

    checks: list[PauliOp] = []
    labels: list[str] = []
    gauss: list[str] = []
    flux: list[str] = []
    edge_qubits: list[list[int]] = []
    for i, (p, off) in enumerate(zip(plans, offsets, strict=True)):
        graph = p.graph
        edge_qubits.append(list(range(off, off + graph.num_edges)))
        incident = graph.incident_edges()
        for v in range(graph.num_vertices):
            q = graph.bindings[v]
            support = [off + e for e in incident[v]]
            if q is not None:
                support.append(q)
            checks.append(PauliOp.x_type(total, support))
            labels.append(tag("A", i, v))
            gauss.append(labels[-1])
        for c, cycle in enumerate(p.cycles):
            checks.append(PauliOp.z_type(total, [off + e for e in cycle]))
            labels.append(tag("B", i, c))
            flux.append(labels[-1])

    deformed: list[str] = []
    untouched: list[str] = []
    deformed_from: dict[str, str] = {}
    for label, check in zip(xcode.labels, xcode.checks, strict=True):
        mask = np.zeros(total, dtype=np.uint8)
        touched = False
        for p, off in zip(plans, offsets, strict=True):
            restricted = restricted_z_support(check, p.x_logical.support)
            if not restricted:
                continue
            touched = True
            path = p.paths.get(label)
            if path is None:
                msg = f"方案缺少检查 {label} 的形变路径"
                raise PlanError(msg)
            vertex_of = p.graph.vertex_of_qubit()
            if p.graph.boundary(path) != {vertex_of[q] for q in restricted}:
                msg = f"检查 {label} 的形变路径边界与其在逻辑支撑上的 Z 分量不一致"
                raise PlanError(msg)
            for e in path:
                mask[off + e] ^= 1
        extended = check.extended(total - n)
        if touched:
            new = f"{label}~"
            checks.append(extended * PauliOp(np.zeros(total, dtype=np.uint8), mask))
            labels.append(new)
            deformed.append(new)
            deformed_from[new] = label
        else:
            checks.append(extended)
            labels.append(label)
            untouched.append(label)

    try:
        framed = StabilizerCode(total, checks, labels, name=f"{code.name}-deformed")
    except CommutationError as exc:
        msg = f"形变检查不对易: {exc}"
        raise VerificationError(msg) from exc
    result_code = record.undo_code(framed)
    if code.is_css and result_code.is_css:
        css = result_code.as_css()
        assert css is not None
        result_code = css
    dc = DeformedCode(code, plans, result_code, gauss, flux, deformed, untouched, edge_qubits, deformed_from)
    if verify:
        _verify(dc)
    logger.info(
        f"形变码 {result_code.name}: n={result_code.n}, k={result_code.k}, "
        f"新增 {len(gauss)} 个 A_v、{len(flux)} 个 B_p、{dc.num_edge_qubits} 个边比特"
    )
    return dc


def _verify(dc: DeformedCode) -> None:
    for p in dc.plans:
        _check_flux_generates(p, dc.base)
        graph = p.graph
        even = all(len(e) % 2 == 0 for e in graph.edges)
        if graph.is_connected() and even and counting_identity(graph) != -1:
            msg = f"计数恒等式不成立: |E|−C−|V| = {counting_identity(graph)}"
            raise VerificationError(msg)
    drop = _independent_logicals(dc.base, [p.logical for p in dc.plans])
    if dc.base.n == 0 or drop == 0:
        return
    if dc.code.k != dc.base.k - drop:
        msg = f"形变后 k={dc.code.k}，应为 {dc.base.k} − {drop}"
        raise VerificationError(msg)


# ---- 超图 ----


def hypergraph_plan(
    code: StabilizerCode,
    logical: PauliOp,
    graph: GaugingGraph,
    cycles: Sequence[Sequence[int]] | None = None,
    paths: dict[str, list[int]] | None = None,
) -> GaugingPlan:
    """为超图补全方案.

    普通图上限制支撑两两配对的顶点都有直连边时，路径取这些边（与匹配布线一致），
    否则由 ∂γ = 限制支撑求解。未给出通量环时，连通的普通图走短环选取，
    超图取关联矩阵零空间并去掉检查关系蕴含的环。
    """
    plan = GaugingPlan(logical, graph)
    xcode = plan.basis_change.apply_code(code)
    support = plan.x_logical.support
    vertex_of = graph.vertex_of_qubit()
    missing = [q for q in support if q not in vertex_of]
    if missing:
        msg = f"逻辑支撑中的比特 {missing[0]} 没有对应顶点"
        raise PlanError(msg)
    incidence = graph.incidence()
    solved: dict[str, list[int]] = dict(paths) if paths is not None else {}
    for label, check in zip(xcode.labels, xcode.checks, strict=True):
        restricted = restricted_z_support(check, support)
        if not restricted or label in solved:
            continue
        vertices = [vertex_of[q] for q in restricted]
        direct = _direct_path(graph, vertices)
        if direct is not None:
            solved[label] = direct
            continue
        rhs = np.zeros(graph.num_vertices, dtype=np.uint8)
        rhs[vertices] = 1
        x = solve(incidence, rhs)
        if x is None:
            msg = f"检查 {label} 与超边诱导的 Z 型检查不对易，无法求出形变路径"
            raise CommutationError(msg)
        solved[label] = [int(e) for e in np.flatnonzero(x)]
    routed = GaugingPlan(logical, graph, [], solved, dict(solved))
    if cycles is not None:
        return routed.with_cycles(cycles)
    if not code.checks:
        return routed.with_cycles(nullspace(incidence).supports())
    if not graph.is_hypergraph and graph.is_connected():
        return select_flux_checks(routed, code)
    return routed.with_cycles(drop_implied_cycles(routed, code, nullspace(incidence).supports()))


def _direct_path(graph: GaugingGraph, vertices: Sequence[int]) -> list[int] | None:
    if graph.is_hypergraph or len(vertices) % 2:
        return None
    path: list[int] = []
    for i in range(0, len(vertices), 2):
        between = graph.edges_between(vertices[i], vertices[i + 1])
        if not between:
            return None
        path.append(min(between))
    return sorted(path)


def hypergraph_deform(
    code: StabilizerCode,
    logical: PauliOp,
    hyperedges: Sequence[Sequence[int]],
    cycles: Sequence[Sequence[int]] | None = None,
    paths: dict[str, list[int]] | None = None,
) -> DeformedCode:
    """以逻辑支撑中的比特集合为超边构造形变码."""
    support = BasisChange.for_logical(logical).apply_op(logical).support
    vertex_of = {q: v for v, q in enumerate(support)}
    edges: list[tuple[int, ...]] = []
    for edge in hyperedges:
        outside = [q for q in edge if q not in vertex_of]
        if outside:
            msg = f"超边 {tuple(edge)} 含逻辑支撑外的比特 {outside[0]}"
            raise InvalidInputError(msg)
        edges.append(tuple(vertex_of[q] for q in edge))
    graph = GaugingGraph(list(support), edges)
    return deform(code, hypergraph_plan(code, logical, graph, cycles, paths))
