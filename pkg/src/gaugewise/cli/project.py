"""项目配置文件：码、逻辑算符、方案参数、稀疏化与时间表."""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError, model_validator

from gaugewise.codes import (
    BBCode,
    CssCode,
    LogicalKind,
    StabilizerCode,
    bb_build,
    bb_logical,
    double_gross_code,
    four_two_two,
    gross_code,
    logical_basis,
    parse_monomial,
    repetition_code,
    rotated_surface_code,
    toy_zz_code,
)
from gaugewise.config import Settings
from gaugewise.errors import InvalidInputError
from gaugewise.f2 import read_text_matrix
from gaugewise.gauging import (
    GaugingPlan,
    PlanDocument,
    RandomExpansion,
    RoutingMode,
    add_expander_edges,
    initial_plan,
    route_paths,
    select_flux_checks,
)
from gaugewise.pauli import PauliOp
from gaugewise.sparsify import CellulationMode, LayeredGraph
from gaugewise.spacetime import FluxCadence, Schedule

logger = logging.getLogger(__name__)

NAMED_CODES = ("double-gross", "four-two-two", "gross", "repetition", "surface", "toy-zz")


class CodeSpec(BaseModel):
    """码的描述：BB 多项式、文本矩阵文件、Pauli 字符串或内置码."""

    name: str = "code"
    kind: Literal["bb", "css", "stabilizer", "named"] = "css"
    l: int | None = None  # noqa: E741
    m: int | None = None
    a: list[tuple[int, int]] = Field(default_factory=lambda: [])
    b: list[tuple[int, int]] = Field(default_factory=lambda: [])
    hx: str | None = None
    hz: str | None = None
    checks: list[str] = Field(default_factory=lambda: [])
    preset: str | None = None
    size: int | None = None

    @model_validator(mode="after")
    def _fields_for_kind(self) -> "CodeSpec":
        if self.kind == "bb" and (self.l is None or self.m is None or not self.a or not self.b):
            msg = "bb 码需要 l、m、a、b"
            raise ValueError(msg)
        if self.kind == "css" and (self.hx is None or self.hz is None):
            msg = "css 码需要 hx 与 hz 两个矩阵文件"
            raise ValueError(msg)
        if self.kind == "stabilizer" and not self.checks:
            msg = "stabilizer 码需要 checks 列表"
            raise ValueError(msg)
        if self.kind == "named" and self.preset not in NAMED_CODES:
            msg = f"named 码的 preset 必须是 {list(NAMED_CODES)} 之一"
            raise ValueError(msg)
        return self


class LogicalSpec(BaseModel):
    """被测量的逻辑算符：显式 Pauli 串、逻辑基中的条目，或 BB 码的 (种类, α)."""

    pauli: str | None = None
    index: int | None = None
    kind: LogicalKind = "X"
    alpha: str | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "LogicalSpec":
        given = [x for x in (self.pauli, self.index, self.alpha) if x is not None]
        if len(given) != 1:
            msg = "logical 必须恰好给出 pauli、index、alpha 之一"
            raise ValueError(msg)
        if self.index is not None and self.kind not in ("X", "Z"):
            msg = "按 index 选取逻辑算符时 kind 只能是 X 或 Z"
            raise ValueError(msg)
        return self


class RandomSpec(BaseModel):
    """随机扩张边搜索；seed 必填."""

    count: int
    target: int
    seed: int
    budget: int = 64
    trials: int = 50


class PartnerSpec(BaseModel):
    """梯形图的另一侧：可选的第二个码与其逻辑算符."""

    code: CodeSpec | None = None
    logical: LogicalSpec


class PlanSpec(BaseModel):
    extra_edges: list[tuple[int, int]] = Field(default_factory=lambda: [])
    random: RandomSpec | None = None
    routing: RoutingMode | None = None
    cycle_length: int | None = None
    partner: PartnerSpec | None = None
    layers: int = 1

    @model_validator(mode="after")
    def _edges_or_random(self) -> "PlanSpec":
        if self.extra_edges and self.random is not None:
            msg = "extra_edges 与 random 只能给出一个"
            raise ValueError(msg)
        return self


class SparsifySpec(BaseModel):
    cap: int | None = None
    mode: CellulationMode | None = None


class ScheduleSpec(BaseModel):
    t_i: int = 1
    t_o: int = 3
    pre_rounds: int = 1
    post_rounds: int = 1
    flux_cadence: FluxCadence = "every_round"
    seed: int = 0

    def to_schedule(self) -> Schedule:
        return Schedule(self.t_i, self.t_o, self.pre_rounds, self.post_rounds, self.flux_cadence)


class ProjectConfig(BaseModel):
    """CLI 项目文件."""

    code: CodeSpec
    logical: LogicalSpec | None = None
    plan: PlanSpec = Field(default_factory=PlanSpec)
    sparsify: SparsifySpec = Field(default_factory=SparsifySpec)
    schedule: ScheduleSpec = Field(default_factory=ScheduleSpec)
    output: str = "out"
    base_dir: Path = Field(default=Path(), exclude=True)

    def resolve(self, ref: str) -> Path:
        path = Path(ref)
        return path if path.is_absolute() else self.base_dir / path

    def output_dir(self) -> Path:
        return self.resolve(self.output)


def _check_files(config: ProjectConfig) -> None:
    specs = [config.code]
    if config.plan.partner is not None and config.plan.partner.code is not None:
        specs.append(config.plan.partner.code)
    for spec in specs:
        for ref in (spec.hx, spec.hz):
            if ref is not None and not config.resolve(ref).is_file():
                msg = f"码 {spec.name} 引用的矩阵文件不存在: {ref}"
                raise InvalidInputError(msg)


def load_project(path: Path | str) -> ProjectConfig:
    """读取并校验项目文件；相对路径相对于项目文件所在目录."""
    file = Path(path)
    if not file.is_file():
        msg = f"项目文件不存在: {file}"
        raise InvalidInputError(msg)
    try:
        data: Any = json.loads(file.read_text(encoding="utf-8"))
        config = ProjectConfig.model_validate({**data, "base_dir": file.parent})
    except (json.JSONDecodeError, ValidationError) as exc:
        msg = f"项目文件 {file} 无法解析: {exc}"
        raise InvalidInputError(msg) from exc
    _check_files(config)
    logger.info(f"已读取项目文件 {file}")
    return config


def build_code(spec: CodeSpec, config: ProjectConfig) -> StabilizerCode:
    if spec.kind == "bb":
        assert spec.l is not None and spec.m is not None
        return bb_build(spec.l, spec.m, spec.a, spec.b, name=spec.name)
    if spec.kind == "css":
        assert spec.hx is not None and spec.hz is not None
        hx = read_text_matrix(config.resolve(spec.hx))
        hz = read_text_matrix(config.resolve(spec.hz))
        return CssCode(hx, hz, name=spec.name)
    if spec.kind == "stabilizer":
        checks = [PauliOp.from_string(text) for text in spec.checks]
        return StabilizerCode(checks[0].n, checks, name=spec.name)
    return named_code(spec.preset or "", spec.size)


def named_code(preset: str, size: int | None = None) -> StabilizerCode:
    if preset == "gross":
        return gross_code()
    if preset == "double-gross":
        return double_gross_code()
    if preset == "four-two-two":
        return four_two_two()
    if preset == "toy-zz":
        return toy_zz_code()
    if preset == "repetition":
        return repetition_code(size or 3)
    if preset == "surface":
        return rotated_surface_code(size or 3)
    msg = f"未知内置码: {preset}"
    raise InvalidInputError(msg)


def select_logical(code: StabilizerCode, spec: LogicalSpec) -> PauliOp:
    if spec.pauli is not None:
        op = PauliOp.from_string(spec.pauli)
        if op.n != code.n:
            msg = f"逻辑算符 {spec.pauli} 的长度 {op.n} 与码长 {code.n} 不符"
            raise InvalidInputError(msg)
        return op
    if spec.alpha is not None:
        if not isinstance(code, BBCode):
            msg = "alpha 只适用于 BB 码"
            raise InvalidInputError(msg)
        return bb_logical(code, parse_monomial(spec.alpha), spec.kind)
    basis = logical_basis(code)
    assert spec.index is not None
    if not 0 <= spec.index < len(basis):
        msg = f"逻辑基只有 {len(basis)} 个条目，index={spec.index} 越界"
        raise InvalidInputError(msg)
    pair = basis[spec.index]
    return pair.x if spec.kind == "X" else pair.z


def require_logical(config: ProjectConfig) -> LogicalSpec:
    if config.logical is None:
        msg = "项目文件缺少 logical"
        raise InvalidInputError(msg)
    return config.logical


def synthesize_plan(code: StabilizerCode, logical: PauliOp, spec: PlanSpec, settings: Settings) -> GaugingPlan:
    """匹配边、扩张边、布线与通量环选取."""
    plan = initial_plan(code, logical)
    if spec.random is not None:
        r = spec.random
        expansion = RandomExpansion(r.count, r.target, r.budget, r.seed, r.trials)
        plan = add_expander_edges(plan, expansion, code, settings)
    else:
        plan = add_expander_edges(plan, [list(e) for e in spec.extra_edges])
    plan = route_paths(plan, code, spec.routing or settings.path_routing)
    return select_flux_checks(plan, code, max_length=spec.cycle_length)


def write_json(path: Path, payload: Any) -> Path:
    """键排序、缩进固定的 JSON，便于与 golden 文件逐字节比较."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    logger.info(f"写出 {path}")
    return path


def emit_json(payload: Any, out: Path | None = None) -> None:
    """写到 out，未给出时写到标准输出."""
    if out is not None:
        write_json(out, payload)
        return
    sys.stdout.write(json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n")


def load_plan_document(path: Path | str) -> PlanDocument:
    file = Path(path)
    if not file.is_file():
        msg = f"方案文件不存在: {file}"
        raise InvalidInputError(msg)
    try:
        return PlanDocument.model_validate_json(file.read_text(encoding="utf-8"))
    except ValidationError as exc:
        msg = f"方案文件 {file} 无法解析: {exc}"
        raise InvalidInputError(msg) from exc


def load_plan(path: Path | str) -> GaugingPlan | LayeredGraph:
    """读取方案；带 layers 扩展块时返回分层图."""
    doc = load_plan_document(path)
    if doc.layers is not None:
        return LayeredGraph.from_document(doc)
    return GaugingPlan.from_document(doc)


def flat_plan(plan: GaugingPlan | LayeredGraph) -> GaugingPlan:
    return plan.to_plan() if isinstance(plan, LayeredGraph) else plan
