"""测试时间线模拟、检测器、时空稳定子与故障距离搜索."""

import json

import pytest

from gaugewise.codes import CssCode, repetition_code
from gaugewise.config import Settings
from gaugewise.errors import InvalidInputError
from gaugewise.gauging import (
    DeformedCode,
    GaugingPlan,
    add_expander_edges,
    deform,
    initial_plan,
    route_paths,
    select_flux_checks,
)
from gaugewise.pauli import PauliOp
from gaugewise.spacetime import (
    FaultSite,
    Schedule,
    Timeline,
    build_detectors,
    build_syndrome_map,
    detectors_for,
    detectors_to_json,
    edge_measurement_string,
    evaluate,
    fault_distance_search,
    measurement_fault,
    pauli_fault,
    syndrome,
    time_logical_fault,
    verify_spacetime_stabilizers,
    violated,
)


@pytest.fixture
def toy_dc(toy_code: CssCode, toy_plan: GaugingPlan) -> DeformedCode:
    """{ZZ} 上测量 XX 的形变码."""
    return deform(toy_code, toy_plan)


@pytest.fixture
def ring_dc() -> DeformedCode:
    """带一个权重 6 通量检查的形变码."""
    code = repetition_code(6)
    plan = route_paths(initial_plan(code, PauliOp.from_string("XXXXXX")), code, "matching")
    plan = select_flux_checks(add_expander_edges(plan, [(0, 5)]), code)
    return deform(code, plan)


@pytest.fixture
def dc_422(code_422: CssCode, plan_422: GaugingPlan) -> DeformedCode:
    """[[4,2,2]] 上测量 X₀X₁ 的形变码."""
    return deform(code_422, plan_422)


_CASES = [
    ("toy_dc", Schedule(1, 3)),
    ("toy_dc", Schedule(2, 5, pre_rounds=2, post_rounds=2)),
    ("dc_422", Schedule.symmetric(2)),
    ("dc_422", Schedule(1, 3)),
    ("ring_dc", Schedule(1, 3)),
    ("ring_dc", Schedule(1, 3, flux_cadence="endpoints")),
]


def _frame_flips(timeline: Timeline, f: FaultSite) -> set[int]:
    """按 Pauli 框架传播得到单故障翻转的测量下标."""
    if f.kind == "measurement":
        return {timeline.index(f.label, f.t)}
    if f.kind == "readout":
        return {timeline.readout_of[f.qubit]}
    if f.kind == "init":
        op, start = PauliOp.x_type(timeline.total, [f.qubit]), timeline.schedule.t_i
    else:
        op, start = timeline.fault_operator(f), f.t
    return {m.index for m in timeline.measurements if m.t >= start and not m.op.commutes(op)}


class TestSchedule:
    """测试时间表."""

    def test_defaults(self) -> None:
        """默认前后各一轮无错测量."""
        s = Schedule(1, 4)
        assert s.t_first == 0
        assert s.t_last == 4
        assert s.deformed_rounds == 3
        assert list(s.rounds()) == [0, 1, 2, 3, 4]
        assert [t for t in s.rounds() if s.is_deformed_round(t)] == [1, 2, 3]
        assert s.is_perfect_round(0)
        assert s.is_perfect_round(4)
        assert not s.is_perfect_round(1)

    def test_symmetric(self) -> None:
        """对称时间表各阶段 r 轮."""
        s = Schedule.symmetric(3)
        assert (s.t_i, s.t_o, s.pre_rounds, s.post_rounds) == (3, 6, 3, 3)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"t_i": 2, "t_o": 2},
            {"t_i": 3, "t_o": 1},
            {"t_i": 1, "t_o": 3, "pre_rounds": 0},
            {"t_i": 1, "t_o": 3, "post_rounds": 0},
            {"t_i": 1, "t_o": 3, "flux_cadence": "sometimes"},
        ],
    )
    def test_invalid(self, kwargs: dict[str, object]) -> None:
        """非法时间表被拒绝."""
        with pytest.raises(InvalidInputError):
            Schedule(**kwargs)  # type: ignore[arg-type]

    def test_fault_names(self) -> None:
        """故障位置的文本形式."""
        assert str(pauli_fault(3, "Z", 2)) == "Z3@2"
        assert str(measurement_fault("A0", 1)) == "M[A0]@1.5"
        assert str(FaultSite("readout", 3, qubit=4)) == "readout[4]@3.5"
        with pytest.raises(InvalidInputError):
            pauli_fault(0, "W", 0)


class TestTimeline:
    """测试时间线与无错模拟."""

    def test_measurements(self, toy_dc: DeformedCode) -> None:
        """原码轮测 ZZ，形变轮测全部形变检查，t_o 处先读出边比特."""
        timeline = Timeline(toy_dc, Schedule(1, 3))
        labels = {t: [timeline.measurements[i].label for i in ids] for t, ids in timeline.rounds.items()}
        assert labels == {0: ["Z0"], 1: ["A0", "A1", "Z0~"], 2: ["A0", "A1", "Z0~"], 3: ["Z_e0", "Z0"]}
        assert timeline.edge_qubits == [2]
        assert timeline.measurements[timeline.index("Z0", 0)].perfect

    def test_clean_run(self, toy_dc: DeformedCode) -> None:
        """无错时 σ = +1，结果按 seed 缓存."""
        timeline = Timeline(toy_dc, Schedule(1, 3))
        record = timeline.clean_run(5)
        assert record.sigma == 1
        assert timeline.clean_run(5) is record

    def test_invalid_faults(self, toy_dc: DeformedCode) -> None:
        """无错轮的测量错误与形变期外的边比特故障被拒绝."""
        timeline = Timeline(toy_dc, Schedule(1, 3))
        with pytest.raises(InvalidInputError):
            timeline.validate_fault(measurement_fault("Z0", 0))
        with pytest.raises(InvalidInputError):
            timeline.validate_fault(pauli_fault(2, "X", 0))
        with pytest.raises(InvalidInputError):
            timeline.run([measurement_fault("B7", 1)])

    def test_elementary_faults(self, toy_dc: DeformedCode) -> None:
        """单故障列表包含 Pauli、测量、初始化与读出错误."""
        faults = Timeline(toy_dc, Schedule(1, 3)).elementary_faults()
        assert len([f for f in faults if f.kind == "pauli"]) == 4 * 2 * 3 + 3 * 3
        assert len([f for f in faults if f.kind == "measurement"]) == 6
        assert [f.kind for f in faults if f.kind in ("init", "readout")] == ["init", "readout"]


class TestDetectors:
    """测试检测器构造."""

    def test_toy(self, toy_dc: DeformedCode) -> None:
        """玩具码上的检测器按阶段分布."""
        detectors = build_detectors(toy_dc, Schedule(1, 3))
        assert [d.name for d in detectors] == ["Z0^0", "Z0~^1", "A0^2", "A1^2", "Z0~^2", "Z0~^3"]
        assert [d.phase for d in detectors] == ["before", "t_i", "bulk", "bulk", "bulk", "t_o"]
        assert [m.label for m in detectors[1].members] == ["Z0", "Z0~", "|0>_e0"]

    def test_json(self, toy_dc: DeformedCode) -> None:
        """JSON 中不含内部测量下标."""
        payload = json.loads(detectors_to_json(build_detectors(toy_dc, Schedule(1, 3))))
        assert payload[0] == {"id": 0, "name": "Z0^0", "phase": "before", "members": [{"label": "Z0", "t": 0.5}]}

    @pytest.mark.parametrize(("name", "schedule"), _CASES)
    def test_clean_runs_satisfy_detectors(self, name: str, schedule: Schedule, request: pytest.FixtureRequest) -> None:
        """100 个 seed 的无错模拟中每个检测器都为 +1，σ = +1."""
        timeline = Timeline(request.getfixturevalue(name), schedule)
        detectors = detectors_for(timeline)
        for seed in range(100):
            record = timeline.clean_run(seed)
            assert violated(detectors, record.outcomes) == []
            assert record.sigma == 1

    @pytest.mark.parametrize("cadence", ["every_round", "endpoints"])
    def test_flux_cadence(self, ring_dc: DeformedCode, cadence: str) -> None:
        """两种通量测量节奏下检测器在无错时都为 +1."""
        detectors = build_detectors(ring_dc, Schedule(1, 3, flux_cadence=cadence))  # type: ignore[arg-type]
        names = [d.name for d in detectors]
        if cadence == "every_round":
            assert "B0^1" in names
            assert "B0^3" in names
        else:
            assert "B0^cell" in names
            assert "B0^2" not in names


class TestFaults:
    """测试故障判定与时空稳定子."""

    def test_bulk_measurement_error(self, toy_dc: DeformedCode, settings: Settings) -> None:
        """单个形变期测量错误违反前后两个检测器."""
        schedule = Schedule(1, 4)
        timeline = Timeline(toy_dc, schedule)
        detectors = build_detectors(toy_dc, schedule, timeline=timeline)
        ev = evaluate(timeline, detectors, [measurement_fault("A0", 2)])
        assert [detectors[i].name for i in ev.violated] == ["A0^2", "A0^3"]
        assert not ev.flips_sigma
        assert ev.state_preserved
        smap = build_syndrome_map(toy_dc, schedule, settings=settings, timeline=timeline)
        assert syndrome(smap, [measurement_fault("A0", 2)]).violated == ev.violated

    def test_syndrome_is_linear(self, toy_dc: DeformedCode, settings: Settings) -> None:
        """同一测量错误出现两次时综合征抵消."""
        smap = build_syndrome_map(toy_dc, Schedule(1, 4), settings=settings)
        fault = measurement_fault("A1", 1)
        assert syndrome(smap, [fault, fault]).violated == []
        assert smap.matrix().rows == len(smap.faults)

    def test_verify_toy(self, toy_dc: DeformedCode, settings: Settings) -> None:
        """玩具码上的时空稳定子全部通过."""
        report = verify_spacetime_stabilizers(toy_dc, Schedule(1, 3), settings=settings)
        assert report.passed
        assert report.detectors == 6

    def test_verify_422(self, code_422: CssCode, plan_422: GaugingPlan, settings: Settings) -> None:
        """[[4,2,2]] 上的时空稳定子全部通过."""
        report = verify_spacetime_stabilizers(deform(code_422, plan_422), Schedule.symmetric(2), settings=settings)
        assert report.passed

    @pytest.mark.parametrize(("t_i", "t_o"), [(1, 2), (1, 4), (2, 5)])
    def test_time_logical(self, toy_dc: DeformedCode, t_i: int, t_o: int) -> None:
        """时间逻辑故障的权重为 t_o − t_i."""
        schedule = Schedule(t_i, t_o)
        faults = time_logical_fault(toy_dc, schedule)
        assert len(faults) == t_o - t_i
        assert {f.label for f in faults} == {"A0"}
        timeline = Timeline(toy_dc, schedule)
        ev = evaluate(timeline, build_detectors(toy_dc, schedule, timeline=timeline), faults)
        assert ev.violated == []
        assert ev.flips_sigma

    @pytest.mark.parametrize(("name", "schedule"), _CASES)
    def test_columns_match_pauli_frame(
        self, name: str, schedule: Schedule, settings: Settings, request: pytest.FixtureRequest
    ) -> None:
        """每个单故障的检测器列等于按 Pauli 框架传播预测的奇偶."""
        dc = request.getfixturevalue(name)
        timeline = Timeline(dc, schedule)
        smap = build_syndrome_map(dc, schedule, settings=settings, timeline=timeline)
        for f, column in zip(smap.faults, smap.columns, strict=True):
            flips = _frame_flips(timeline, f)
            expected = sum(1 << d.id for d in smap.detectors if len(flips & set(d.measurements)) % 2)
            assert column == expected, str(f)

    @pytest.mark.parametrize(
        ("fault", "expected"),
        [
            (pauli_fault(0, "X", 1), ["Z0^1"]),
            (measurement_fault("Z0", 1), ["Z0^1", "Z0~^2"]),
            (pauli_fault(0, "Z", 1), []),
            (pauli_fault(0, "X", 2), ["Z0~^2"]),
            (pauli_fault(2, "X", 2), ["Z0~^2"]),
            (FaultSite("init", 1, qubit=2), ["Z0~^2"]),
            (measurement_fault("Z0~", 2), ["Z0~^2", "Z0~^3"]),
            (measurement_fault("A0", 2), ["A0^3"]),
            (pauli_fault(0, "X", 3), ["Z0~^3"]),
            (pauli_fault(0, "Z", 3), ["A0^3"]),
            (pauli_fault(2, "X", 3), ["Z0~^3"]),
            (pauli_fault(2, "Z", 3), ["A0^3", "A1^3"]),
            (measurement_fault("Z0~", 3), ["Z0~^3", "Z0~^4"]),
            (measurement_fault("A1", 3), ["A1^3", "A1^4"]),
            (measurement_fault("A0", 4), ["A0^4"]),
            (pauli_fault(0, "X", 5), ["Z0~^5"]),
            (pauli_fault(2, "X", 5), ["Z0~^5"]),
            (FaultSite("readout", 5, qubit=2), ["Z0~^5"]),
            (measurement_fault("Z0", 5), ["Z0~^5", "Z0^6"]),
            (pauli_fault(0, "X", 6), ["Z0^6"]),
        ],
        ids=str,
    )
    def test_named_faults(self, toy_dc: DeformedCode, settings: Settings, fault: FaultSite, expected: list[str]) -> None:
        """各阶段的单故障违反的检测器."""
        schedule = Schedule(2, 5, pre_rounds=2, post_rounds=2)
        timeline = Timeline(toy_dc, schedule)
        detectors = build_detectors(toy_dc, schedule, timeline=timeline)
        names = "Z0^0 Z0^1 Z0~^2 A0^3 A1^3 Z0~^3 A0^4 A1^4 Z0~^4 Z0~^5 Z0^6"
        assert [d.name for d in detectors] == names.split()
        ev = evaluate(timeline, detectors, [fault])
        assert [detectors[i].name for i in ev.violated] == expected
        smap = build_syndrome_map(toy_dc, schedule, settings=settings, timeline=timeline)
        assert syndrome(smap, [fault]).violated == ev.violated

    def test_edge_string(self, toy_dc: DeformedCode) -> None:
        """边比特的初始化错误串是平凡故障."""
        faults = edge_measurement_string(toy_dc, Schedule(1, 3))
        assert [str(f) for f in faults] == ["init[2]@0.5", "M[Z0~]@1.5", "M[Z0~]@2.5", "readout[2]@3.5"]


class TestFaultDistance:
    """测试故障距离搜索."""

    def test_toy_weight_one(self, toy_dc: DeformedCode, settings: Settings) -> None:
        """码距为 1 的玩具码在 t_i 之前的 Z 错误不可检测地翻转 σ."""
        result = fault_distance_search(toy_dc, Schedule(1, 3), 2, settings=settings)
        assert result is not None
        assert result.weight == 1
        assert [str(f) for f in result.faults] == ["Z0@0"]
        assert result.flips_sigma

    def test_422(self, code_422: CssCode, plan_422: GaugingPlan, settings: Settings) -> None:
        """[[4,2,2]] 上两轮形变测量的故障距离为 2."""
        result = fault_distance_search(deform(code_422, plan_422), Schedule(1, 3), 3, settings=settings)
        assert result is not None
        assert result.weight == 2

    def test_zero_weight(self, toy_dc: DeformedCode) -> None:
        """w_max = 0 不搜索，负数被拒绝."""
        assert fault_distance_search(toy_dc, Schedule(1, 2), 0) is None
        with pytest.raises(InvalidInputError):
            fault_distance_search(toy_dc, Schedule(1, 2), -1)
