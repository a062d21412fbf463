"""命令行子命令：codes、gauge、sparsify、spacetime、repro、export."""

import argparse
from typing import NoReturn

from gaugewise.cli import codes, export, gauge, repro, spacetime, sparsify
from gaugewise.cli.project import (
    CodeSpec,
    LogicalSpec,
    PlanSpec,
    ProjectConfig,
    ScheduleSpec,
    SparsifySpec,
    load_project,
)
from gaugewise.errors import InvalidInputError

COMMANDS = ("codes", "export", "gauge", "repro", "spacetime", "sparsify")


class UsageError(InvalidInputError):
    """命令行参数错误."""


class CliParser(argparse.ArgumentParser):
    """参数错误抛出 UsageError，由入口统一转成错误 JSON."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def build_parser() -> CliParser:
    parser = CliParser(prog="gaugewise", description="qLDPC 码规范化测量的合成、模拟与验证")
    parser.add_argument("--log-level", help="覆盖 GAUGEWISE_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (codes, gauge, sparsify, spacetime, repro, export):
        module.register(subparsers)
    return parser


__all__ = [
    "COMMANDS",
    "CliParser",
    "CodeSpec",
    "LogicalSpec",
    "PlanSpec",
    "ProjectConfig",
    "ScheduleSpec",
    "SparsifySpec",
    "UsageError",
    "build_parser",
    "load_project",
]
