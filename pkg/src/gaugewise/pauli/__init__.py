"""Pauli 算符与稳定子模拟器."""

from gaugewise.pauli.operator import GATE_NAMES, Gate, PauliOp, conjugate_rows, product
from gaugewise.pauli.tableau import CanonicalForm, MeasureResult, Outcome, Tableau

__all__ = [
    "GATE_NAMES",
    "CanonicalForm",
    "Gate",
    "MeasureResult",
    "Outcome",
    "PauliOp",
    "Tableau",
    "conjugate_rows",
    "product",
]
