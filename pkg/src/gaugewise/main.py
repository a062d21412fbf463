"""gaugewise 命令行入口."""

import json
import logging
import sys
from collections.abc import Sequence
from typing import Any

from gaugewise.cli import COMMANDS, build_parser
from gaugewise.config import get_settings
from gaugewise.errors import (
    BudgetExceededError,
    CompatibilityError,
    ExpansionSearchError,
    GaugewiseError,
    InvalidInputError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


def _error_json(exc: Exception, code: int) -> str:
    payload: dict[str, Any] = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, CompatibilityError):
        payload["pair"] = list(exc.pair)
    if isinstance(exc, ExpansionSearchError):
        payload["best"] = exc.best
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def _fail(exc: Exception, code: int) -> int:
    sys.stderr.write(_error_json(exc, code) + "\n")
    return code


def _first_command(argv: Sequence[str]) -> str | None:
    skip = False
    for token in argv:
        if skip:
            skip = False
            continue
        if token == "--log-level":
            skip = True
            continue
        if not token.startswith("-"):
            return token
    return None


def main(argv: Sequence[str] | None = None) -> int:
    args_list = list(sys.argv[1:] if argv is None else argv)
    settings = get_settings()

    command = _first_command(args_list)
    if command is not None and command not in COMMANDS:
        msg = f"未知子命令: {command}（可选 {list(COMMANDS)}）"
        return _fail(InvalidInputError(msg), EXIT_USAGE)

    try:
        args = build_parser().parse_args(args_list)
    except InvalidInputError as exc:
        return _fail(exc, EXIT_INVALID)

    # 配置日志
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        return int(args.handler(args, settings))
    except InvalidInputError as exc:
        return _fail(exc, EXIT_INVALID)
    except BudgetExceededError as exc:
        return _fail(exc, EXIT_BUDGET)
    except GaugewiseError as exc:
        logger.error(f"{args.command} 失败: {exc}")
        return _fail(exc, EXIT_FAILURE)


if __name__ == "__main__":
    raise SystemExit(main())
