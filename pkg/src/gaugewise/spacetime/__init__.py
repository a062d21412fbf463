"""时空容错分析：时间线模拟、检测器、时空稳定子与故障距离."""

from gaugewise.spacetime.detectors import (
    Detector,
    DetectorMember,
    build_detectors,
    detectors_for,
    detectors_to_json,
    violated,
)
from gaugewise.spacetime.schedule import (
    FaultKind,
    FaultSite,
    FluxCadence,
    Phase,
    Schedule,
    measurement_fault,
    pauli_fault,
)
from gaugewise.spacetime.simulate import Measurement, RunRecord, Timeline
from gaugewise.spacetime.verify import (
    Evaluation,
    FaultSearchResult,
    StabilizerReport,
    SyndromeMap,
    SyndromeResult,
    build_syndrome_map,
    edge_measurement_string,
    evaluate,
    fault_distance_search,
    spacetime_stabilizer_generators,
    syndrome,
    time_logical_fault,
    verify_spacetime_stabilizers,
)

__all__ = [
    "Detector",
    "DetectorMember",
    "Evaluation",
    "FaultKind",
    "FaultSearchResult",
    "FaultSite",
    "FluxCadence",
    "Measurement",
    "Phase",
    "RunRecord",
    "Schedule",
    "StabilizerReport",
    "SyndromeMap",
    "SyndromeResult",
    "Timeline",
    "build_detectors",
    "build_syndrome_map",
    "detectors_for",
    "detectors_to_json",
    "edge_measurement_string",
    "evaluate",
    "fault_distance_search",
    "measurement_fault",
    "pauli_fault",
    "spacetime_stabilizer_generators",
    "syndrome",
    "time_logical_fault",
    "verify_spacetime_stabilizers",
]
