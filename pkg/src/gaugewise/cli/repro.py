"""repro 子命令：重建 gross 与 double gross 码上的内置方案并写出报告."""

import argparse
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Any

from gaugewise.cli.project import write_json
from gaugewise.codes import BBCode, TannerReport, tanner_report
from gaugewise.config import Settings
from gaugewise.gauging import GaugingPlan, cycle_space_dim, deform, plan_to_json, redundant_cycle_dim
from gaugewise.presets import mirror_plan, preset_names, preset_recipe

logger = logging.getLogger(__name__)


def reproduce(name: str) -> dict[str, Any]:
    """重建预置方案，返回 Tanner 报告、方案 JSON 与摘要."""
    recipe = preset_recipe(name)
    code, plan = recipe.code, recipe.plan
    dc = deform(code, plan)
    report = tanner_report(dc.code)
    summary: dict[str, Any] = {
        "preset": name,
        "code": {"n": code.n, "k": code.k},
        "deformed": {"n": dc.code.n, "k": dc.code.k},
        "vertices": plan.graph.num_vertices,
        "edges": plan.graph.num_edges,
        "cycle_space_dim": cycle_space_dim(plan.graph),
        "redundant_cycle_dim": redundant_cycle_dim(code, plan.logical),
        "flux_checks": len(dc.flux_labels),
        "additions": {
            "x_checks": len(dc.gauss_labels),
            "z_checks": len(dc.flux_labels),
            "qubits": dc.num_edge_qubits,
            "total": dc.total_additions,
        },
    }
    if isinstance(code, BBCode):
        summary["mirror_symmetric"] = _mirror_matches(code, plan, report)
    logger.info(f"{name}: {plan.graph.num_edges} 条边，新增 {dc.total_additions}")
    return {"report": report, "plan": plan_to_json(plan), "summary": summary}


def _all_weights(report: TannerReport) -> Counter[int]:
    total: Counter[int] = Counter()
    for hist in (report.x_weights, report.z_weights, report.mixed_weights):
        total.update(hist)
    return total


def _mirror_matches(code: BBCode, plan: GaugingPlan, report: TannerReport) -> bool:
    """对偶逻辑算符上的方案给出相同的检查权重与比特度数分布.

    边比特留在 X 基，Gauss 检查与形变检查在对偶方案里是混合型的，只比较合并后的直方图。
    """
    mirrored = tanner_report(deform(code, mirror_plan(code, plan)).code)
    return _all_weights(mirrored) == _all_weights(report) and mirrored.qubit_degrees == report.qubit_degrees


def render_table(report: TannerReport) -> str:
    """文本表格：每行一个 (类别, 取值, 个数)."""
    rows = [("kind", "value", "count")]
    for kind, hist in (("X", report.x_weights), ("Z", report.z_weights), ("mixed", report.mixed_weights)):
        rows += [(f"{kind} weight", str(w), str(c)) for w, c in hist.items()]
    rows += [("qubit degree", str(d), str(c)) for d, c in report.qubit_degrees.items()]
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths, strict=True)) for r in rows) + "\n"


def _repro(args: argparse.Namespace, settings: Settings) -> int:
    result = reproduce(args.preset)
    out: Path = args.out / args.preset
    write_json(out / "tanner_report.json", result["report"].model_dump())
    out.joinpath("plan.json").write_text(result["plan"], encoding="utf-8")
    write_json(out / "summary.json", result["summary"])
    if args.table:
        sys.stdout.write(render_table(result["report"]))
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser("repro", help="重建内置方案")
    parser.add_argument("preset", choices=preset_names())
    parser.add_argument("--out", type=Path, default=Path("out"))
    parser.add_argument("--table", action="store_true", help="同时在标准输出打印表格")
    parser.set_defaults(handler=_repro)
