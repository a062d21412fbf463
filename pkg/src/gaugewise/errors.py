"""错误类型."""

from typing import Any


class GaugewiseError(Exception):
    """gaugewise 基础错误."""


class InvalidInputError(GaugewiseError):
    """输入非法或前置条件不满足."""


class MatrixFormatError(InvalidInputError):
    """矩阵文本格式错误."""


class CommutationError(InvalidInputError):
    """算符对易关系不满足."""


class DisconnectedGraphError(InvalidInputError):
    """图不连通."""


class PlanError(InvalidInputError):
    """测量方案与码不匹配."""


class CompatibilityError(InvalidInputError):
    """并行测量的逻辑算符互不兼容."""

    def __init__(self, msg: str, pair: tuple[int, int]) -> None:
        super().__init__(msg)
        self.pair = pair


class BudgetExceededError(GaugewiseError):
    """枚举预算耗尽."""


class ExpansionSearchError(BudgetExceededError):
    """随机扩张边搜索在预算内未找到合格方案."""

    def __init__(self, msg: str, best: dict[str, Any] | None = None) -> None:
        super().__init__(msg)
        self.best = best or {}


class SimulationError(GaugewiseError):
    """稳定子模拟器错误."""


class ContradictionError(SimulationError):
    """强制测量结果与稳定子群矛盾."""


class EntangledQubitError(SimulationError):
    """丢弃的量子比特仍处于纠缠态."""


class NonHermitianError(SimulationError):
    """测量了非厄米算符."""


class VerificationError(GaugewiseError):
    """内部校验失败."""
