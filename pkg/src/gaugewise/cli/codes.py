"""codes 子命令：构造码、Tanner 图审计与码距."""

import argparse
import logging
from pathlib import Path

from gaugewise.cli.project import build_code, emit_json, load_project
from gaugewise.codes import distance_exact, distance_upper, tanner_report
from gaugewise.config import Settings
from gaugewise.errors import InvalidInputError
from gaugewise.f2 import write_text_matrix

logger = logging.getLogger(__name__)


def _build(args: argparse.Namespace, settings: Settings) -> int:
    config = load_project(args.config)
    code = build_code(config.code, config)
    summary = {"name": code.name, "n": code.n, "k": code.k, "checks": len(code.checks), "css": code.is_css}
    css = code.as_css()
    if css is not None:
        out = config.output_dir()
        out.mkdir(parents=True, exist_ok=True)
        write_text_matrix(out / f"{code.name}_hx.txt", css.hx)
        write_text_matrix(out / f"{code.name}_hz.txt", css.hz)
    emit_json(summary, args.out)
    return 0


def _report(args: argparse.Namespace, settings: Settings) -> int:
    config = load_project(args.config)
    code = build_code(config.code, config)
    emit_json(tanner_report(code).model_dump(), args.out)
    return 0


def _distance(args: argparse.Namespace, settings: Settings) -> int:
    config = load_project(args.config)
    code = build_code(config.code, config)
    if args.exact:
        if args.wmax is None:
            msg = "--exact 需要 --wmax"
            raise InvalidInputError(msg)
        d = distance_exact(code, args.wmax)
        payload: dict[str, object] = {"mode": "exact", "w_max": args.wmax, "distance": d}
    else:
        bound = distance_upper(code, trials=args.trials, seed=args.seed, settings=settings)
        payload = {
            "mode": "upper",
            "seed": args.seed,
            "trials": args.trials or settings.distance_upper_trials,
            "distance_upper": bound.weight,
            "witness": str(bound.witness),
        }
    emit_json(payload, args.out)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:  # type: ignore[type-arg]
    parser = subparsers.add_parser("codes", help="构造码并审计")
    sub = parser.add_subparsers(dest="action", required=True)

    p = sub.add_parser("build", help="构造码；CSS 码同时写出文本矩阵")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=_build)

    p = sub.add_parser("report", help="Tanner 图审计")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=_report)

    p = sub.add_parser("distance", help="码距：精确枚举或随机上界")
    p.add_argument("--config", type=Path, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--upper", action="store_true")
    p.add_argument("--wmax", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=_distance)
