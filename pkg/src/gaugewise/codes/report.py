"""Tanner 图审计：检查权重与比特度数直方图."""

from collections import Counter

import numpy as np
from pydantic import BaseModel

from gaugewise.codes.stabilizer import StabilizerCode


class TannerReport(BaseModel):
    """检查权重与比特度数直方图."""

    n: int
    checks: int
    x_weights: dict[int, int]
    z_weights: dict[int, int]
    mixed_weights: dict[int, int]
    qubit_degrees: dict[int, int]
    max_weight: int
    max_degree: int

    def histogram_totals(self) -> tuple[int, int]:
        """(检查数合计, 比特数合计)."""
        checks = sum(self.x_weights.values()) + sum(self.z_weights.values()) + sum(self.mixed_weights.values())
        return checks, sum(self.qubit_degrees.values())


def _histogram(values: list[int]) -> dict[int, int]:
    return dict(sorted(Counter(values).items()))


def tanner_report(code: StabilizerCode) -> TannerReport:
    """统计码的 Tanner 图."""
    x_w: list[int] = []
    z_w: list[int] = []
    mixed_w: list[int] = []
    degrees = np.zeros(code.n, dtype=np.int64)
    for check in code.checks:
        if check.weight == 0:
            continue
        degrees[check.support] += 1
        if check.is_x_type:
            x_w.append(check.weight)
        elif check.is_z_type:
            z_w.append(check.weight)
        else:
            mixed_w.append(check.weight)
    weights = x_w + z_w + mixed_w
    return TannerReport(
        n=code.n,
        checks=len(weights),
        x_weights=_histogram(x_w),
        z_weights=_histogram(z_w),
        mixed_weights=_histogram(mixed_w),
        qubit_degrees=_histogram([int(d) for d in degrees]),
        max_weight=max(weights, default=0),
        max_degree=int(degrees.max()) if code.n else 0,
    )
