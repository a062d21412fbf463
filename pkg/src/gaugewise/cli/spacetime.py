"""spacetime 子命令：检测器、时空稳定子校验与故障距离搜索."""

import argparse
import logging
from pathlib import Path

from gaugewise.cli.project import ProjectConfig, build_code, emit_json, flat_plan, load_plan, load_project
from gaugewise.config import Settings
from gaugewise.gauging import DeformedCode, deform
from gaugewise.spacetime import (
    Schedule,
    build_detectors,
    detectors_to_json,
    fault_distance_search,
    time_logical_fault,
    verify_spacetime_stabilizers,
)

logger = logging.getLogger(__name__)


def _setup(args: argparse.Namespace) -> tuple[ProjectConfig, DeformedCode, Schedule, int]:
    config = load_project(args.config)
    code = build_code(config.code, config)
    dc = deform(code, flat_plan(load_plan(args.plan)))
    seed = args.seed if args.seed is not None else config.schedule.seed
    return config, dc, config.schedule.to_schedule(), seed


def _detectors(args: argparse.Namespace, settings: Settings) -> int:
    _, dc, schedule, seed = _setup(args)
    detectors = build_detectors(dc, schedule, seed)
    text = detectors_to_json(detectors)
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
    else:
        emit_json({"detectors": len(detectors), "seed": seed})
    return 0


def _verify(args: argparse.Namespace, settings: Settings) -> int:
    _, dc, schedule, seed = _setup(args)
    report = verify_spacetime_stabilizers(dc, schedule, seed, settings)
    payload = report.model_dump()
    payload["time_logical_weight"] = len(time_logical_fault(dc, schedule, seed))
    emit_json(payload, args.out)
    return 0


def _search(args: argparse.Namespace, settings: Settings) -> int:
    _, dc, schedule, seed = _setup(args)
    found = fault_distance_search(dc, schedule, args.wmax, seed, settings)
    if found is None:
        payload: dict[str, object] = {"w_max": args.wmax, "found": False}
    else:
        payload = {
            "w_max": args.wmax,
            "found": True,
            "weight": found.weight,
            "faults": [str(f) for f in found.faults],
            "flips_sigma": found.flips_sigma,
            "residual": str(found.residual),
        }
    emit_json(payload, args.out)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser("spacetime", help="时空容错分析")
    sub = parser.add_subparsers(dest="action", required=True)
    for name, handler, help_text in (
        ("detectors", _detectors, "导出检测器 JSON"),
        ("verify", _verify, "校验时空稳定子生成元"),
        ("search", _search, "故障距离搜索"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, required=True)
        p.add_argument("--plan", type=Path, required=True)
        p.add_argument("--seed", type=int)
        p.add_argument("--out", type=Path)
        if name == "search":
            p.add_argument("--wmax", type=int, required=True)
        p.set_defaults(handler=handler)
