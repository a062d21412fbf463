"""export 子命令：方案、形变码与检测器的稳定格式导出."""

import argparse
import logging
from pathlib import Path
from typing import Literal

from gaugewise.cli.project import build_code, flat_plan, load_plan, load_project, write_json
from gaugewise.codes import StabilizerCode, tanner_report
from gaugewise.config import Settings
from gaugewise.errors import InvalidInputError
from gaugewise.gauging import GaugingPlan, deform, plan_to_dot, plan_to_json, write_deformed_matrices
from gaugewise.spacetime import Schedule, build_detectors, detectors_to_json
from gaugewise.sparsify import LayeredGraph

logger = logging.getLogger(__name__)

Artifact = Literal["plan", "deformed", "detectors"]
ExportFormat = Literal["json", "text-matrix", "dot"]

SUPPORTED: dict[Artifact, tuple[ExportFormat, ...]] = {
    "plan": ("json", "dot"),
    "deformed": ("json", "text-matrix"),
    "detectors": ("json",),
}


def export(
    artifact: Artifact,
    fmt: ExportFormat,
    plan: GaugingPlan | LayeredGraph,
    out: Path,
    code: StabilizerCode | None = None,
    schedule: Schedule | None = None,
    seed: int = 0,
) -> list[Path]:
    """写出一个产物，返回写出的文件路径."""
    if fmt not in SUPPORTED.get(artifact, ()):
        msg = f"不支持把 {artifact} 导出为 {fmt}（可选 {list(SUPPORTED.get(artifact, ()))}）"
        raise InvalidInputError(msg)
    flat = flat_plan(plan)
    if artifact == "plan":
        out.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "dot":
            out.write_text(plan_to_dot(flat), encoding="utf-8")
        elif isinstance(plan, LayeredGraph):
            write_json(out, plan.to_document().model_dump(exclude_none=True))
        else:
            out.write_text(plan_to_json(plan), encoding="utf-8")
        return [out]
    if code is None:
        msg = f"导出 {artifact} 需要码"
        raise InvalidInputError(msg)
    dc = deform(code, flat)
    if artifact == "deformed":
        if fmt == "text-matrix":
            return write_deformed_matrices(out, dc, stem=code.name)
        payload = {"summary": dc.summary(), "tanner": tanner_report(dc.code).model_dump()}
        return [write_json(out, payload)]
    if schedule is None:
        msg = "导出检测器需要时间表"
        raise InvalidInputError(msg)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(detectors_to_json(build_detectors(dc, schedule, seed)), encoding="utf-8")
    return [out]


def _export(args: argparse.Namespace, settings: Settings) -> int:
    plan = load_plan(args.plan)
    code = schedule = None
    seed = 0
    if args.config is not None:
        config = load_project(args.config)
        code = build_code(config.code, config)
        schedule = config.schedule.to_schedule()
        seed = config.schedule.seed
    paths = export(args.artifact, args.format, plan, args.out, code, schedule, seed)
    logger.info(f"导出 {args.artifact}（{args.format}）: {[str(p) for p in paths]}")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser("export", help="导出产物")
    parser.add_argument("artifact", choices=sorted(SUPPORTED))
    parser.add_argument("format", choices=["json", "text-matrix", "dot"])
    parser.add_argument("--plan", type=Path, required=True)
    parser.add_argument("--config", type=Path)
    parser.add_argument("--out", type=Path, required=True, help="文件路径；text-matrix 为目录")
    parser.set_defaults(handler=_export)
