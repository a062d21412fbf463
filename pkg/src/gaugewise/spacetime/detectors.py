"""检测器：无错时乘积恒为 +1 的测量（及初始化）集合."""

import json
import logging
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, Field

from gaugewise.errors import VerificationError
from gaugewise.gauging import DeformedCode
from gaugewise.spacetime.schedule import Phase, Schedule
from gaugewise.spacetime.simulate import Timeline

logger = logging.getLogger(__name__)


class DetectorMember(BaseModel):
    label: str
    t: float


class Detector(BaseModel):
    """一个检测器；measurements 为时间线上的测量下标."""

    id: int
    name: str
    phase: Phase
    members: list[DetectorMember]
    measurements: list[int] = Field(default_factory=lambda: [], exclude=True)

    def value(self, outcomes: Sequence[int]) -> int:
        return int(np.prod([outcomes[i] for i in self.measurements])) if self.measurements else 1


def detectors_for(timeline: Timeline) -> list[Detector]:
    """按五个阶段（t_i 之前、t_i、两者之间、t_o、t_o 之后）列出检测器."""
    s = timeline.schedule
    dc = timeline.dc
    base_labels = dc.base.labels
    out: list[Detector] = []

    def add(name: str, phase: Phase, indices: list[int], inits: Sequence[int] = ()) -> None:
        members = [
            DetectorMember(label=timeline.measurements[i].label, t=timeline.measurements[i].t + 0.5) for i in indices
        ]
        members += [DetectorMember(label=f"|0>_e{q - timeline.n}", t=s.t_i - 0.5) for q in inits]
        out.append(Detector(id=len(out), name=name, phase=phase, members=members, measurements=indices))

    def repeated(labels: Sequence[str], t: int, phase: Phase) -> None:
        for lab in labels:
            add(f"{lab}^{t}", phase, [timeline.index(lab, t - 1), timeline.index(lab, t)])

    # 第一轮无错测量直接与初态比较
    for lab in base_labels:
        add(f"{lab}^{s.t_first}", "before", [timeline.index(lab, s.t_first)])
    for t in range(s.t_first + 1, s.t_i):
        repeated(base_labels, t, "before")

    every_round = s.flux_cadence == "every_round"
    for lab in dc.flux_labels:
        edges = timeline.edge_support(dc.code.check(lab))
        if every_round:
            add(f"{lab}^{s.t_i}", "t_i", [timeline.index(lab, s.t_i)], edges)
        else:
            add(f"{lab}^cell", "t_o", [timeline.readout_of[q] for q in edges], edges)
    for lab in base_labels:
        new = timeline.deformed_label(lab)
        edges = timeline.edge_support(dc.code.check(new))
        add(f"{new}^{s.t_i}", "t_i", [timeline.index(lab, s.t_i - 1), timeline.index(new, s.t_i)], edges)

    measured = [lab for lab in dc.code.labels if every_round or lab not in set(dc.flux_labels)]
    for t in range(s.t_i + 1, s.t_o):
        repeated(measured, t, "bulk")

    if every_round:
        for lab in dc.flux_labels:
            edges = timeline.edge_support(dc.code.check(lab))
            add(f"{lab}^{s.t_o}", "t_o", [timeline.index(lab, s.t_o - 1), *(timeline.readout_of[q] for q in edges)])
    for lab in base_labels:
        new = timeline.deformed_label(lab)
        edges = timeline.edge_support(dc.code.check(new))
        add(
            f"{new}^{s.t_o}",
            "t_o",
            [timeline.index(new, s.t_o - 1), *(timeline.readout_of[q] for q in edges), timeline.index(lab, s.t_o)],
        )

    for t in range(s.t_o + 1, s.t_last + 1):
        repeated(base_labels, t, "after")
    return out


def violated(detectors: Sequence[Detector], outcomes: Sequence[int]) -> list[int]:
    return [d.id for d in detectors if d.value(outcomes) != 1]


def build_detectors(
    dc: DeformedCode,
    schedule: Schedule,
    seed: int = 0,
    timeline: Timeline | None = None,
) -> list[Detector]:
    """构造检测器并用一次无错模拟确认每个检测器的结果确定为 +1."""
    timeline = timeline or Timeline(dc, schedule)
    detectors = detectors_for(timeline)
    record = timeline.clean_run(seed)
    bad = violated(detectors, record.outcomes)
    if bad:
        msg = f"检测器 {detectors[bad[0]].name} 在无错模拟中结果为 −1"
        raise VerificationError(msg)
    counts: dict[str, int] = {}
    for d in detectors:
        counts[d.phase] = counts.get(d.phase, 0) + 1
    logger.info(f"检测器: 共 {len(detectors)} 个，按阶段 {counts}")
    return detectors


def detectors_to_json(detectors: Sequence[Detector]) -> str:
    payload = [d.model_dump() for d in detectors]
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
