"""应用配置管理."""

from functools import lru_cache
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """应用配置（环境变量）."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="GAUGEWISE_",
        extra="ignore",
    )

    # 并发配置
    worker_threads: int = 4
    search_shards: int = 8

    # 距离计算
    distance_exact_budget: int = 5_000_000
    distance_upper_trials: int = 200

    # 图与环
    cycle_search_length: int = 6
    expander_degree_cap: int = 6
    path_routing: Literal["matching", "shortest"] = "matching"

    # 稀疏化与准则审计
    decongest_cap: int = 3
    max_flux_weight: int = 4
    kappa_threshold: int = 3
    cheeger_exact_max_vertices: int = 24
    cellulation: Literal["triangles", "squares"] = "triangles"

    # 并行测量
    parallel_overlap_cap: int = 2

    # 时空故障搜索
    fault_search_budget: int = 2_000_000

    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    """获取应用配置（带缓存）."""
    return Settings()
