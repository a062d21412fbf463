"""测试配置和 fixtures."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from gaugewise.codes import CssCode, four_two_two, toy_zz_code
from gaugewise.config import Settings
from gaugewise.gauging import GaugingPlan, initial_plan, route_paths, select_flux_checks
from gaugewise.pauli import PauliOp


@pytest.fixture
def rng() -> np.random.Generator:
    """固定种子的随机数生成器."""
    return np.random.default_rng(2024)


@pytest.fixture
def settings() -> Settings:
    """单线程、小预算的配置."""
    return Settings(worker_threads=1, search_shards=2, distance_upper_trials=20)


@pytest.fixture
def toy_code() -> CssCode:
    """两比特玩具码 {ZZ}."""
    return toy_zz_code()


@pytest.fixture
def toy_plan(toy_code: CssCode) -> GaugingPlan:
    """{ZZ} 上测量 XX 的方案：两个顶点、一条边."""
    plan = initial_plan(toy_code, PauliOp.from_string("XX"))
    return select_flux_checks(route_paths(plan, toy_code, "matching"), toy_code)


@pytest.fixture
def code_422() -> CssCode:
    """[[4,2,2]] 码."""
    return four_two_two()


@pytest.fixture
def plan_422(code_422: CssCode) -> GaugingPlan:
    """[[4,2,2]] 上测量 XXXX 以外的逻辑 X₀X₁."""
    plan = initial_plan(code_422, PauliOp.from_string("XXII"))
    return select_flux_checks(route_paths(plan, code_422, "matching"), code_422)


@pytest.fixture
def write_project(tmp_path: Path) -> Callable[[dict[str, Any]], Path]:
    """把工程配置写成 tmp_path 下的 JSON 文件."""

    def write(payload: dict[str, Any], name: str = "project.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return write
