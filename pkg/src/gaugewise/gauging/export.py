"""方案与形变码的导出：JSON、DOT 与文本矩阵."""

import json
import logging
from pathlib import Path

from gaugewise.errors import InvalidInputError
from gaugewise.f2 import BitMatrix, format_text_matrix
from gaugewise.gauging.deform import DeformedCode
from gaugewise.gauging.plan import GaugingPlan, PlanDocument

logger = logging.getLogger(__name__)


def plan_to_json(plan: GaugingPlan) -> str:
    """方案序列化为 JSON（键排序，便于比较）."""
    payload = plan.to_document().model_dump(exclude_none=True)
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def plan_from_json(text: str) -> GaugingPlan:
    return GaugingPlan.from_document(PlanDocument.model_validate_json(text))


def read_plan(path: Path | str) -> GaugingPlan:
    return plan_from_json(Path(path).read_text(encoding="utf-8"))


def write_plan(path: Path | str, plan: GaugingPlan) -> None:
    Path(path).write_text(plan_to_json(plan), encoding="utf-8")


def plan_to_dot(plan: GaugingPlan, name: str = "G") -> str:
    """辅助图的 DOT 文本；超边画成方形节点，哑顶点为虚线."""
    graph = plan.graph
    lines = [f"graph {name} {{"]
    for v in range(graph.num_vertices):
        style = ' style="dashed"' if graph.is_dummy(v) else ""
        lines.append(f'  v{v} [label="{graph.vertex_label(v)}"{style}];')
    for idx, edge in enumerate(graph.edges):
        if len(edge) == 2:
            u, v = edge
            lines.append(f'  v{u} -- v{v} [label="e{idx}"];')
        else:
            lines.append(f'  h{idx} [shape=box label="e{idx}"];')
            lines.extend(f"  h{idx} -- v{v};" for v in edge)
    lines.append("}")
    return "\n".join(lines) + "\n"


def deformed_matrices(dc: DeformedCode) -> tuple[BitMatrix, BitMatrix]:
    """CSS 形变码的 (H_X, H_Z)."""
    css = dc.as_css()
    if css is None:
        msg = f"形变码 {dc.code.name} 不是 CSS 码，无法导出文本矩阵对"
        raise InvalidInputError(msg)
    return css.hx, css.hz


def write_deformed_matrices(directory: Path | str, dc: DeformedCode, stem: str = "deformed") -> list[Path]:
    """把 H_X、H_Z 写成两个文本矩阵文件，返回文件路径."""
    hx, hz = deformed_matrices(dc)
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / f"{stem}_hx.txt", out / f"{stem}_hz.txt"]
    for path, m in zip(paths, (hx, hz), strict=True):
        path.write_text(format_text_matrix(m), encoding="utf-8")
        logger.info(f"写出 {path}（{m.rows}×{m.cols}）")
    return paths
