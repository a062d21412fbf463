"""sparsify 子命令."""

import argparse
import logging
from pathlib import Path

from gaugewise.cli.project import build_code, emit_json, flat_plan, load_plan, load_project, write_json
from gaugewise.config import Settings
from gaugewise.errors import InvalidInputError
from gaugewise.gauging import GaugingPlan
from gaugewise.sparsify import audit_desiderata, cheeger, decongest, sparsified_deform

logger = logging.getLogger(__name__)


def _audit(args: argparse.Namespace, settings: Settings) -> int:
    plan = load_plan(args.plan)
    code = None
    if args.config is not None:
        config = load_project(args.config)
        code = build_code(config.code, config)
    report = audit_desiderata(plan, code, settings)
    emit_json(report.model_dump(), args.out)
    return 0


def _decongest(args: argparse.Namespace, settings: Settings) -> int:
    plan = load_plan(args.plan)
    if not isinstance(plan, GaugingPlan):
        msg = f"{args.plan} 已经是分层方案"
        raise InvalidInputError(msg)
    cap = args.cap
    mode = args.mode
    code = None
    if args.config is not None:
        config = load_project(args.config)
        code = build_code(config.code, config)
        cap = cap if cap is not None else config.sparsify.cap
        mode = mode or config.sparsify.mode
    layered = decongest(plan, cap, mode, settings)
    payload: dict[str, object] = {
        "layers": layered.layers,
        "lifted": layered.num_lifted,
        "max_flux_weight": max(layered.flux_weights(), default=0),
    }
    if code is not None:
        payload["deformed"] = sparsified_deform(code, layered).summary()
    if args.out is not None:
        write_json(args.out, layered.to_document().model_dump(exclude_none=True))
    emit_json(payload)
    return 0


def _cheeger(args: argparse.Namespace, settings: Settings) -> int:
    plan = flat_plan(load_plan(args.plan))
    mode = "exact" if args.exact else "spectral" if args.spectral else None
    h = cheeger(plan.graph, mode, settings)
    payload = {
        "value": h.value,
        "mode": h.mode,
        "lower_bound": h.lower_bound,
        "subset": h.subset,
        "ratio": str(h.ratio) if h.ratio is not None else None,
        "lambda2": h.lambda2,
    }
    emit_json(payload, args.out)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser("sparsify", help="Cheeger 常数、分层去拥塞与准则审计")
    sub = parser.add_subparsers(dest="action", required=True)

    p = sub.add_parser("audit", help="κ、h(G) 与通量检查权重")
    p.add_argument("--plan", type=Path, required=True)
    p.add_argument("--config", type=Path)
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=_audit)

    p = sub.add_parser("decongest", help="分层并剖分通量环")
    p.add_argument("--plan", type=Path, required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--mode", choices=["triangles", "squares"])
    p.add_argument("--config", type=Path)
    p.add_argument("--out", type=Path, help="写出带 layers 扩展块的方案文件")
    p.set_defaults(handler=_decongest)

    p = sub.add_parser("cheeger", help="Cheeger 常数")
    p.add_argument("--plan", type=Path, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--spectral", action="store_true")
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=_cheeger)
