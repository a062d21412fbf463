"""稀疏化：Cheeger 常数、环剖分、分层去拥塞与准则审计."""

from gaugewise.sparsify.audit import DesiderataReport, audit_desiderata
from gaugewise.sparsify.cellulation import (
    Cellulation,
    CellulationMode,
    LayeredGraph,
    cellulate,
    closed_walks,
    decongest,
    sparsified_deform,
)
from gaugewise.sparsify.cheeger import (
    CheegerMode,
    CheegerResult,
    cheeger,
    cheeger_exact,
    cheeger_spectral,
)

__all__ = [
    "Cellulation",
    "CellulationMode",
    "CheegerMode",
    "CheegerResult",
    "DesiderataReport",
    "LayeredGraph",
    "audit_desiderata",
    "cellulate",
    "cheeger",
    "cheeger_exact",
    "cheeger_spectral",
    "closed_walks",
    "decongest",
    "sparsified_deform",
]
