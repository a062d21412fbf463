"""测试辅助图合成、形变码构造与规范化测量."""

import json
import math
from pathlib import Path

import numpy as np
import pytest
from statevector import project, same_state, state_of

from gaugewise.codes import (
    CssCode,
    StabilizerCode,
    code_state,
    css_from_dense,
    distance_exact,
    repetition_code,
    rotated_surface_code,
    surface_logicals,
    tanner_report,
)
from gaugewise.config import Settings
from gaugewise.errors import (
    CommutationError,
    CompatibilityError,
    DisconnectedGraphError,
    ExpansionSearchError,
    InvalidInputError,
    PlanError,
)
from gaugewise.f2 import parse_text_matrix
from gaugewise.gauging import (
    GaugingGraph,
    GaugingPlan,
    RandomExpansion,
    add_expander_edges,
    basis_change_to_x,
    boundary_maps,
    counting_identity,
    cycle_basis,
    cycle_space_dim,
    deform,
    gauge_measure,
    gauge_measure_all,
    hypergraph_deform,
    initial_plan,
    matching_edges,
    parallel_compose,
    plan_from_json,
    plan_to_dot,
    plan_to_json,
    recipe_plan,
    redundant_cycle_dim,
    route_paths,
    select_flux_checks,
    write_deformed_matrices,
)
from gaugewise.pauli import Gate, PauliOp, Tableau


def _surface_plan(logical: PauliOp) -> tuple[CssCode, GaugingPlan]:
    code = rotated_surface_code(3)
    plan = route_paths(initial_plan(code, logical), code, "matching")
    return code, select_flux_checks(plan, code)


def _random_instance(seed: int) -> tuple[Tableau, GaugingPlan]:
    """随机 Clifford 态给出码与逻辑算符，初态不是逻辑算符的本征态；图为随机生成树加少量边."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 9))
    t = Tableau.zero_state(n)
    for _ in range(3 * n * n):
        kind = int(rng.integers(3))
        if kind == 2:
            a, b = rng.choice(n, size=2, replace=False)
            t.apply(Gate("CX", (int(a), int(b))))
        else:
            t.apply(Gate("HS"[kind], (int(rng.integers(n)),)))
    r = int(rng.integers(1, n))
    stabs = t.stabilizers()
    code = StabilizerCode(n, [PauliOp.from_string(g.letters()) for g in stabs[:r]])
    logical = PauliOp.from_string(stabs[r].letters())
    assert code.is_logical(logical)
    t0 = t.copy()
    t0.measure(PauliOp.from_string(t.destabilizers()[r].letters()), rng=rng)
    bindings: list[int | None] = [*logical.support, *([None] * int(rng.integers(0, 3)))]
    if len(bindings) == 1:
        bindings.append(None)
    size = len(bindings)
    edges = [(int(rng.integers(v)), v) for v in range(1, size)]
    if size >= 3:
        for _ in range(int(rng.integers(0, 3))):
            a, b = sorted(int(x) for x in rng.choice(size, size=2, replace=False))
            if (a, b) not in edges:
                edges.append((a, b))
    return t0, GaugingPlan(logical, GaugingGraph(bindings, edges))


class TestGraph:
    """测试 GaugingGraph."""

    def test_self_loop_rejected(self) -> None:
        """不允许自环."""
        with pytest.raises(InvalidInputError):
            GaugingGraph([0, 1], [(1, 1)])

    def test_duplicate_binding_rejected(self) -> None:
        """两个顶点不能绑定同一个比特."""
        with pytest.raises(InvalidInputError):
            GaugingGraph([3, 3], [(0, 1)])

    def test_disconnected(self) -> None:
        """不连通的图报 DisconnectedGraphError."""
        graph = GaugingGraph([0, 1, 2], [(0, 1)])
        assert not graph.is_connected()
        with pytest.raises(DisconnectedGraphError):
            graph.require_connected()

    def test_counting_identity(self) -> None:
        """连通图满足 |E| − C − |V| = −1."""
        graph = GaugingGraph([0, 1, 2, None], [(0, 1), (1, 2), (2, 0), (0, 3), (3, 1), (0, 1)])
        assert counting_identity(graph) == -1
        assert cycle_space_dim(graph) == 3

    def test_cycle_basis_is_exact(self) -> None:
        """环基给出 δ₂δ = 0 且 im δ = ker δ₂."""
        graph = GaugingGraph([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        basis = cycle_basis(graph)
        assert basis.rows == 2
        maps = boundary_maps(graph, basis)
        assert maps.composes_to_zero()
        assert maps.is_exact()

    def test_multi_edge_cycle(self) -> None:
        """重边构成长度为 2 的环."""
        graph = GaugingGraph([0, 1], [(0, 1), (0, 1)])
        assert cycle_basis(graph).supports() == [[0, 1]]


class TestSynthesis:
    """测试匹配、布线与扩张边."""

    def test_toy_plan(self, toy_plan: GaugingPlan) -> None:
        """{ZZ} 上测量 XX：两个顶点、一条边、没有通量环."""
        assert toy_plan.graph.num_vertices == 2
        assert toy_plan.graph.edges == [(0, 1)]
        assert toy_plan.cycles == []
        assert toy_plan.paths == {"Z0": [0]}

    def test_surface_x_plan(self) -> None:
        """平面码 X̄ 的匹配图是一条路径."""
        _, plan = _surface_plan(surface_logicals(3)[0])
        assert plan.graph.bindings == [0, 3, 6]
        assert sorted(plan.graph.edges) == [(0, 1), (1, 2)]
        assert plan.graph.is_connected()

    def test_anticommuting_logical(self) -> None:
        """与检查反对易的算符不能作为逻辑算符."""
        code = rotated_surface_code(3)
        with pytest.raises(InvalidInputError):
            initial_plan(code, PauliOp.x_type(9, [0]))

    def test_shortest_routing(self) -> None:
        """最短路布线的边界等于限制支撑."""
        code = rotated_surface_code(3)
        plan = initial_plan(code, surface_logicals(3)[0])
        plan = add_expander_edges(plan, [(0, 2)])
        routed = route_paths(plan, code, "shortest")
        for path in routed.paths.values():
            assert len(path) == 1

    def test_explicit_expander_edges(self) -> None:
        """给定的扩张边追加在末尾."""
        _, plan = _surface_plan(surface_logicals(3)[0])
        grown = add_expander_edges(plan, [(0, 2)])
        assert grown.graph.num_edges == 3
        assert grown.graph.edges[-1] == (0, 2)

    def test_bad_expander_edge(self) -> None:
        """越界的扩张边被拒绝."""
        _, plan = _surface_plan(surface_logicals(3)[0])
        with pytest.raises(InvalidInputError):
            add_expander_edges(plan, [(0, 7)])

    def test_random_expansion_exhausted(self, settings: Settings) -> None:
        """预算内达不到目标时报告最好的一次试验."""
        _, plan = _surface_plan(surface_logicals(3)[0])
        spec = RandomExpansion(count=1, target=10, budget=3, seed=1, tester=lambda p: p.graph.num_edges)
        with pytest.raises(ExpansionSearchError) as info:
            add_expander_edges(plan, spec, settings=settings)
        assert info.value.best["weight"] == 3
        assert info.value.best["trial"] == 0

    def test_random_expansion_passes(self, settings: Settings) -> None:
        """第一次通过的试验被采纳."""
        _, plan = _surface_plan(surface_logicals(3)[0])
        spec = RandomExpansion(count=2, target=4, budget=5, seed=1, tester=lambda p: p.graph.num_edges)
        grown = add_expander_edges(plan, spec, settings=settings)
        assert grown.graph.num_edges == 4

    def test_redundant_cycles(self, toy_code: CssCode) -> None:
        """单个检查没有冗余环."""
        assert redundant_cycle_dim(toy_code, PauliOp.from_string("XX")) == 0

    def test_matching_repetition(self) -> None:
        """重复码上 X̄ 的匹配边连接相邻比特."""
        matching = matching_edges(repetition_code(4), PauliOp.from_string("XXXX"))
        assert matching.edges == [(0, 1), (1, 2), (2, 3)]
        assert matching.rows == {"Z0": [0], "Z1": [1], "Z2": [2]}

    def test_matching_pairs_consecutive_vertices(self, code_422: CssCode) -> None:
        """限制支撑为四个比特时按顺序两两配对."""
        matching = matching_edges(code_422, PauliOp.from_string("XXXX"))
        assert matching.edges == [(0, 1), (2, 3)]
        assert matching.rows == {"Z0": [0, 1]}


class TestBasisChange:
    """测试逻辑算符到 X 型的基变换."""

    def test_z_logical(self, code_422: CssCode) -> None:
        """Z 型逻辑算符经 H 变为 X 型，检查算符随之共轭."""
        xcode, xlogical, record = basis_change_to_x(code_422, PauliOp.from_string("ZZII"))
        assert xlogical == PauliOp.from_string("XXII")
        assert [g.name for g in record.gates] == ["H", "H"]
        assert xcode.check("X0") == PauliOp.from_string("ZZXX")
        assert record.undo_op(xlogical) == PauliOp.from_string("ZZII")

    def test_y_logical(self, code_422: CssCode) -> None:
        """Y 分量用 S† 变为 X."""
        _, xlogical, record = basis_change_to_x(code_422, PauliOp.from_string("YYII"))
        assert xlogical.letters() == "XXII"
        assert [g.name for g in record.gates] == ["SDG", "SDG"]

    def test_x_logical_is_identity(self, code_422: CssCode) -> None:
        """X 型逻辑算符不需要变换."""
        xcode, _, record = basis_change_to_x(code_422, PauliOp.from_string("XXII"))
        assert record.is_identity
        assert xcode is code_422

    def test_anticommuting(self, code_422: CssCode) -> None:
        """与检查反对易时报 CommutationError."""
        with pytest.raises(CommutationError):
            basis_change_to_x(code_422, PauliOp.from_string("XIII"))

    def test_size_mismatch(self, code_422: CssCode) -> None:
        """比特数不一致时被拒绝."""
        with pytest.raises(InvalidInputError):
            basis_change_to_x(code_422, PauliOp.from_string("XX"))


class TestDeform:
    """测试形变码."""

    def test_toy_deformed_code(self, toy_code: CssCode, toy_plan: GaugingPlan) -> None:
        """{ZZ} 形变后为 A₀ = X₀X_e、A₁ = X₁X_e、Z₀Z₁Z_e，k = 0."""
        dc = deform(toy_code, toy_plan)
        assert dc.gauss_labels == ["A0", "A1"]
        assert dc.deformed_labels == ["Z0~"]
        assert dc.deformed_from == {"Z0~": "Z0"}
        assert dc.code.check("A0") == PauliOp.from_string("XIX")
        assert dc.code.check("Z0~") == PauliOp.from_string("ZZZ")
        assert dc.summary() == {
            "n": 3,
            "k": 0,
            "gauss": 2,
            "flux": 0,
            "deformed": 1,
            "untouched": 0,
            "edge_qubits": 1,
        }

    def test_k_drops_by_one(self, code_422: CssCode, plan_422: GaugingPlan) -> None:
        """[[4,2,2]] 测量一个逻辑算符后 k = 1."""
        dc = deform(code_422, plan_422)
        assert dc.code.k == 1
        assert dc.untouched_labels == ["X0"]

    def test_z_logical_gives_mixed_checks(self) -> None:
        """Z̄ 方案的 Gauss 检查在码比特上是 Z、在边比特上是 X."""
        code, plan = _surface_plan(surface_logicals(3)[1])
        dc = deform(code, plan)
        assert dc.code.k == 0
        assert tanner_report(dc.code).mixed_weights
        gauss = dc.code.check("A0")
        assert gauss.letters()[0] == "Z"
        assert set(gauss.letters()[9:]) <= {"X", "I"}

    def test_missing_path(self, toy_code: CssCode, toy_plan: GaugingPlan) -> None:
        """缺少形变路径时报 PlanError."""
        broken = toy_plan.with_paths({})
        with pytest.raises(PlanError):
            deform(toy_code, broken)

    def test_missing_flux_cycle(self) -> None:
        """通量环不足以张成环空间时报 PlanError."""
        code = rotated_surface_code(3)
        plan = add_expander_edges(initial_plan(code, surface_logicals(3)[0]), [(0, 2)])
        plan = route_paths(plan, code, "matching")
        with pytest.raises(PlanError):
            deform(code, plan)

    def test_parallel_plans(self, code_422: CssCode) -> None:
        """两个逻辑算符同时测量，k 从 2 降到 0."""
        plans = []
        for word in ("XXII", "XIXI"):
            p = initial_plan(code_422, PauliOp.from_string(word))
            plans.append(select_flux_checks(route_paths(p, code_422, "matching"), code_422))
        dc = deform(code_422, parallel_compose(plans))
        assert dc.code.k == 0
        assert dc.gauss_labels == ["A0.0", "A0.1", "A1.0", "A1.1"]

    def test_incompatible_plans(self, code_422: CssCode) -> None:
        """在公共比特上作用不同 Pauli 的方案不能并行."""
        plans = [
            initial_plan(code_422, PauliOp.from_string("XXII")),
            initial_plan(code_422, PauliOp.from_string("ZZII")),
        ]
        with pytest.raises(CompatibilityError) as info:
            parallel_compose(plans)
        assert info.value.pair == (0, 1)

    def test_overlap_cap(self, code_422: CssCode) -> None:
        """同一比特被过多逻辑算符共享时报错."""
        plans = [initial_plan(code_422, PauliOp.from_string(w)) for w in ("XXII", "XIXI", "XIIX")]
        with pytest.raises(CompatibilityError):
            parallel_compose(plans, overlap_cap=2)

    def test_hypergraph_reduces_to_graph(self, toy_code: CssCode, toy_plan: GaugingPlan) -> None:
        """超边都是普通边时与 deform 结果一致."""
        expected = deform(toy_code, toy_plan)
        dc = hypergraph_deform(toy_code, PauliOp.from_string("XX"), [[0, 1]])
        assert dc.summary() == expected.summary()
        assert dc.code.labels == expected.code.labels
        assert dc.code.checks == expected.code.checks

    def test_hyperedge_outside_support(self, code_422: CssCode) -> None:
        """超边不能含逻辑支撑外的比特."""
        with pytest.raises(InvalidInputError):
            hypergraph_deform(code_422, PauliOp.from_string("XXII"), [[0, 2]])

    @pytest.mark.parametrize(
        ("n", "extra"),
        [(6, [(0, 5)]), (4, [(0, 2), (1, 3)])],
    )
    def test_hypergraph_matches_graph_pipeline(self, n: int, extra: list[tuple[int, int]]) -> None:
        """普通图作为超图输入时与匹配布线加短环选取的结果完全一致."""
        code = repetition_code(n)
        logical = PauliOp.from_string("X" * n)
        plan = route_paths(initial_plan(code, logical), code, "matching")
        plan = select_flux_checks(add_expander_edges(plan, extra), code)
        expected = deform(code, plan)
        edges = [[i, i + 1] for i in range(n - 1)] + [list(e) for e in extra]
        dc = hypergraph_deform(code, logical, edges)
        assert dc.summary() == expected.summary()
        assert dc.code.labels == expected.code.labels
        assert dc.code.checks == expected.code.checks

    def test_hypergraph_redundant_checks(self) -> None:
        """检查关系蕴含的环不再作为通量检查."""
        code = css_from_dense([], [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        logical = PauliOp.from_string("XXX")
        expected = deform(code, select_flux_checks(route_paths(initial_plan(code, logical), code, "matching"), code))
        dc = hypergraph_deform(code, logical, [[0, 1], [1, 2], [0, 2]])
        assert expected.flux_labels == []
        assert dc.flux_labels == []
        assert dc.code.checks == expected.code.checks

    def test_hyperedge_flux_drops_implied(self) -> None:
        """真超图上零空间中被检查关系蕴含的方向被去掉."""
        code = css_from_dense([], [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
        hyperedges = [[0, 1], [1, 2], [2, 3], [0, 3], [0, 1, 2, 3]]
        dc = hypergraph_deform(code, PauliOp.from_string("XXXX"), hyperedges, paths={"Z3": [3]})
        assert len(dc.flux_labels) == 1
        (flux,) = dc.checks_of(dc.flux_labels)
        assert code.n + 4 in flux.support
        assert dc.code.k == 0


class TestMeasure:
    """对照稠密态矢量测试规范化测量."""

    @pytest.mark.parametrize("mode", ["algorithm1", "circuit"])
    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_x_logical_projection(self, mode: str, seed: int) -> None:
        """测量后的态等于 (1 + σX̄)/2 投影后的初态."""
        code, plan = _surface_plan(surface_logicals(3)[0])
        t0 = code_state(code)
        result = gauge_measure(t0, plan, mode, np.random.default_rng(seed))  # type: ignore[arg-type]
        expected = project(state_of(t0), [plan.logical.with_sign(result.sigma)])
        assert result.tableau.n == code.n
        assert same_state(state_of(result.tableau), expected)
        assert result.sigma == int(np.prod(result.vertex_outcomes))

    @pytest.mark.parametrize("instance", range(12))
    def test_random_codes_projection(self, instance: int) -> None:
        """随机 Clifford 码、随机逻辑算符与随机图上，两种模式都等于 σL 投影."""
        t0, plan = _random_instance(instance)
        for mode in ("algorithm1", "circuit"):
            for seed in range(20):
                result = gauge_measure(t0, plan, mode, np.random.default_rng(seed))  # type: ignore[arg-type]
                expected = project(state_of(t0), [plan.logical.with_sign(result.sigma)])
                assert same_state(state_of(result.tableau), expected)

    @pytest.mark.parametrize("instance", range(12))
    def test_modes_agree(self, instance: int) -> None:
        """同一 seed 下两种模式给出相同的 σ 与相同的稳定子群."""
        t0, plan = _random_instance(instance)
        for seed in range(20):
            a = gauge_measure(t0, plan, "algorithm1", np.random.default_rng(seed))
            b = gauge_measure(t0, plan, "circuit", np.random.default_rng(seed))
            assert a.sigma == b.sigma
            assert a.tableau.canonical() == b.tableau.canonical()

    @pytest.mark.parametrize("seed", range(5))
    def test_modes_agree_on_ring(self, seed: int) -> None:
        """带通量环的重复码方案上两种模式一致."""
        code = repetition_code(6)
        plan = route_paths(initial_plan(code, PauliOp.from_string("XXXXXX")), code, "matching")
        plan = select_flux_checks(add_expander_edges(plan, [(0, 5)]), code)
        t0 = code_state(code)
        a = gauge_measure(t0, plan, "algorithm1", np.random.default_rng(seed))
        b = gauge_measure(t0, plan, "circuit", np.random.default_rng(seed))
        assert a.sigma == b.sigma
        assert a.tableau.canonical() == b.tableau.canonical()

    def test_outcome_statistics(self, toy_plan: GaugingPlan) -> None:
        """|00⟩ 上测量 XX 时 σ = ±1 各占一半."""
        rng = np.random.default_rng(2024)
        plus = sum(gauge_measure(Tableau.zero_state(2), toy_plan, rng=rng).sigma == 1 for _ in range(1000))
        assert abs(plus - 500) <= 5 * math.sqrt(250)

    @pytest.mark.parametrize("seed", [0, 5])
    def test_z_logical_projection(self, seed: int) -> None:
        """Z̄ 的测量经过基变换后同样正确."""
        code, plan = _surface_plan(surface_logicals(3)[1])
        t0 = code_state(code, basis="+")
        result = gauge_measure(t0, plan, rng=np.random.default_rng(seed))
        expected = project(state_of(t0), [plan.logical.with_sign(result.sigma)])
        assert same_state(state_of(result.tableau), expected)

    def test_deterministic_sigma(self) -> None:
        """X̄ 本征态上 σ 确定为本征值."""
        code, plan = _surface_plan(surface_logicals(3)[0])
        t0 = code_state(code, basis="+", signs=[-1])
        for seed in range(3):
            assert gauge_measure(t0, plan, rng=np.random.default_rng(seed)).sigma == -1

    def test_input_not_modified(self, toy_plan: GaugingPlan) -> None:
        """输入的 tableau 保持不变."""
        t0 = Tableau.zero_state(2)
        before = t0.canonical()
        gauge_measure(t0, toy_plan, rng=np.random.default_rng(0))
        assert t0.canonical() == before

    @pytest.mark.parametrize("seed", [0, 1])
    def test_shor_circuit_with_dummies(self, seed: int) -> None:
        """带哑顶点的方案在电路模式下同样投影到 σX̄."""
        code = rotated_surface_code(3)
        recipe = recipe_plan("shor", code, surface_logicals(3)[0])
        t0 = code_state(code)
        result = gauge_measure(t0, recipe.plan, "circuit", np.random.default_rng(seed))
        expected = project(state_of(t0), [recipe.plan.logical.with_sign(result.sigma)])
        assert same_state(state_of(result.tableau), expected)

    def test_measure_all(self, code_422: CssCode) -> None:
        """依次测量两个兼容的逻辑算符."""
        plans = []
        for word in ("XXII", "XIXI"):
            p = initial_plan(code_422, PauliOp.from_string(word))
            plans.append(select_flux_checks(route_paths(p, code_422, "matching"), code_422))
        results = gauge_measure_all(code_state(code_422), parallel_compose(plans), rng=np.random.default_rng(4))
        final = results[-1].tableau
        for plan, result in zip(plans, results, strict=True):
            assert final.stabilizes(plan.logical.with_sign(result.sigma))

    def test_unknown_mode(self, toy_plan: GaugingPlan) -> None:
        """未知模式被拒绝."""
        with pytest.raises(InvalidInputError):
            gauge_measure(Tableau.zero_state(2), toy_plan, "teleport")  # type: ignore[arg-type]


class TestRecipes:
    """测试常见构造."""

    def test_ladder_surface_codes(self) -> None:
        """两个 d=3 平面码的梯形手术：k = 1，码距 3."""
        code = rotated_surface_code(3)
        x = surface_logicals(3)[0]
        recipe = recipe_plan("ladder", code, x, x, code)
        assert recipe.code.n == 18
        assert recipe.plan.graph.num_edges == 7
        dc = deform(recipe.code, recipe.plan)
        assert dc.code.k == 1
        assert distance_exact(dc.code, 3) == 3

    def test_ladder_length_mismatch(self) -> None:
        """两侧支撑长度必须一致."""
        code = rotated_surface_code(3)
        other = rotated_surface_code(2)
        with pytest.raises(PlanError):
            recipe_plan("ladder", code, surface_logicals(3)[0], surface_logicals(2)[0], other)

    def test_shor_graph(self) -> None:
        """Shor 式构造：每个支撑比特一个哑顶点."""
        code = rotated_surface_code(3)
        recipe = recipe_plan("shor", code, surface_logicals(3)[0])
        graph = recipe.plan.graph
        assert graph.num_vertices == 6
        assert graph.dummies == [3, 4, 5]
        assert deform(code, recipe.plan).code.k == 0

    def test_css_init_prepares_code_state(self) -> None:
        """css-init 在 |0⟩ⁿ 上测量全部 X 检查得到码态."""
        code = rotated_surface_code(3)
        recipe = recipe_plan("css-init", code)
        assert recipe.code.n == 0
        result = gauge_measure(Tableau.zero_state(0), recipe.plan, rng=np.random.default_rng(3), keep_edges=True)
        t = result.tableau
        assert t.n == code.n
        for check in code.checks:
            if check.is_z_type:
                assert t.stabilizes(check)
        for v, support in enumerate(code.hx.supports()):
            assert t.peek(PauliOp.x_type(code.n, support)) == result.vertex_outcomes[v]

    def test_ckbb_layers(self) -> None:
        """一层复制的多层超图有两个独立环."""
        code = rotated_surface_code(3)
        recipe = recipe_plan("ckbb", code, surface_logicals(3)[0], 1)
        assert recipe.plan.graph.num_vertices == 6
        dc = deform(code, recipe.plan)
        assert dc.code.k == 0
        assert len(dc.flux_labels) == 2

    def test_unknown_recipe(self) -> None:
        """未知构造名被拒绝."""
        with pytest.raises(InvalidInputError):
            recipe_plan("lattice-surgery")


class TestExport:
    """测试方案与形变码的导出."""

    def test_json_roundtrip(self) -> None:
        """JSON 读回后文档一致."""
        _, plan = _surface_plan(surface_logicals(3)[0])
        text = plan_to_json(plan)
        assert plan_from_json(text).to_document() == plan.to_document()

    def test_empty_cycles_in_json(self, toy_plan: GaugingPlan) -> None:
        """没有通量环时 cycles 为空列表，不输出 layers."""
        payload = json.loads(plan_to_json(toy_plan))
        assert payload["cycles"] == []
        assert "layers" not in payload
        assert payload["logical"] == "+XX"

    def test_dot(self, toy_plan: GaugingPlan) -> None:
        """DOT 文本包含顶点与边."""
        dot = plan_to_dot(toy_plan)
        assert dot.startswith("graph G {")
        assert 'v0 -- v1 [label="e0"];' in dot

    def test_invalid_json_plan(self, toy_plan: GaugingPlan) -> None:
        """引用不存在边的环被拒绝."""
        payload = json.loads(plan_to_json(toy_plan))
        payload["cycles"] = [[5]]
        with pytest.raises(PlanError):
            plan_from_json(json.dumps(payload))

    def test_text_matrices(self, tmp_path: Path, code_422: CssCode, plan_422: GaugingPlan) -> None:
        """形变码写成 H_X、H_Z 两个文本矩阵."""
        dc = deform(code_422, plan_422)
        paths = write_deformed_matrices(tmp_path, dc, stem="m")
        assert [p.name for p in paths] == ["m_hx.txt", "m_hz.txt"]
        hx = parse_text_matrix(paths[0].read_text(encoding="utf-8"))
        hz = parse_text_matrix(paths[1].read_text(encoding="utf-8"))
        assert hx.shape == (3, 5)
        assert hz.shape == (1, 5)
