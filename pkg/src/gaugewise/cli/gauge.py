"""gauge 子命令：合成方案、构造形变码、执行测量与特殊构造."""

import argparse
import logging
from pathlib import Path

import numpy as np

from gaugewise.cli.project import (
    build_code,
    emit_json,
    flat_plan,
    load_plan,
    load_project,
    require_logical,
    select_logical,
    synthesize_plan,
)
from gaugewise.codes import CssCode, code_state, tanner_report
from gaugewise.config import Settings
from gaugewise.errors import InvalidInputError
from gaugewise.gauging import deform, gauge_measure, plan_to_dot, recipe_plan, write_plan

logger = logging.getLogger(__name__)


def _plan(args: argparse.Namespace, settings: Settings) -> int:
    config = load_project(args.config)
    code = build_code(config.code, config)
    logical = select_logical(code, require_logical(config))
    plan = synthesize_plan(code, logical, config.plan, settings)
    out = args.out or config.output_dir() / "plan.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    write_plan(out, plan)
    if args.dot:
        out.with_suffix(".dot").write_text(plan_to_dot(plan), encoding="utf-8")
    logger.info(f"方案: {plan.graph.num_vertices} 个顶点，{plan.graph.num_edges} 条边，{len(plan.cycles)} 个通量环")
    return 0


def _deform(args: argparse.Namespace, settings: Settings) -> int:
    config = load_project(args.config)
    code = build_code(config.code, config)
    plan = flat_plan(load_plan(args.plan))
    dc = deform(code, plan)
    payload = {
        "summary": dc.summary(),
        "additions": {
            "gauss": len(dc.gauss_labels),
            "flux": len(dc.flux_labels),
            "edge_qubits": dc.num_edge_qubits,
            "total": dc.total_additions,
        },
        "tanner": tanner_report(dc.code).model_dump(),
    }
    emit_json(payload, args.out)
    return 0


def _run(args: argparse.Namespace, settings: Settings) -> int:
    plan = flat_plan(load_plan(args.plan))
    config = load_project(args.config)
    code = build_code(config.code, config)
    state = code_state(code)
    result = gauge_measure(state, plan, args.mode, rng=np.random.default_rng(args.seed))
    payload = {
        "seed": args.seed,
        "mode": args.mode,
        "sigma": result.sigma,
        "byproduct": str(result.byproduct),
        "outcomes": [{"label": o.label, "value": o.value} for o in result.tableau.outcomes],
    }
    emit_json(payload, args.out)
    return 0


def _recipe(args: argparse.Namespace, settings: Settings) -> int:
    config = load_project(args.config)
    code = build_code(config.code, config)
    if args.kind == "css-init":
        if not isinstance(code, CssCode):
            msg = "css-init 只适用于 CSS 码"
            raise InvalidInputError(msg)
        recipe = recipe_plan("css-init", code)
    else:
        logical = select_logical(code, require_logical(config))
        if args.kind == "shor":
            recipe = recipe_plan("shor", code, logical)
        elif args.kind == "ckbb":
            recipe = recipe_plan("ckbb", code, logical, config.plan.layers)
        else:
            partner = config.plan.partner
            if partner is None:
                msg = "ladder 需要 plan.partner"
                raise InvalidInputError(msg)
            other = build_code(partner.code, config) if partner.code is not None else None
            logical_b = select_logical(other or code, partner.logical)
            recipe = recipe_plan("ladder", code, logical, logical_b, other)
    graph = recipe.plan.graph
    summary = {"vertices": graph.num_vertices, "edges": graph.num_edges, "cycles": len(recipe.plan.cycles)}
    if args.kind != "css-init":
        summary.update(deform(recipe.code, recipe.plan).summary())
    out = args.out or config.output_dir() / f"{args.kind}.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    write_plan(out, recipe.plan)
    emit_json({"recipe": args.kind, "plan": str(out), "summary": summary})
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser("gauge", help="规范化测量方案")
    sub = parser.add_subparsers(dest="action", required=True)

    p = sub.add_parser("plan", help="匹配边、扩张边、布线与通量环")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.add_argument("--dot", action="store_true", help="同时写出 DOT 图")
    p.set_defaults(handler=_plan)

    p = sub.add_parser("deform", help="构造形变码并审计")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--plan", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=_deform)

    p = sub.add_parser("run", help="在码态上执行一次规范化测量")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--plan", type=Path, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=["algorithm1", "circuit"], default="algorithm1")
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=_run)

    p = sub.add_parser("recipe", help="特殊构造")
    p.add_argument("kind", choices=["ladder", "shor", "css-init", "ckbb"])
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=_recipe)
