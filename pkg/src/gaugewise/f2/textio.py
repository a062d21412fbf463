"""0/1 文本矩阵格式的读写.

格式：首行 "rows cols"，随后每行一个由 0/1 组成、长度为 cols 的字符串。
"""

from pathlib import Path

import numpy as np

from gaugewise.errors import MatrixFormatError
from gaugewise.f2.bitmatrix import BitMatrix


def format_text_matrix(m: BitMatrix) -> str:
    """序列化为文本矩阵."""
    lines = [f"{m.rows} {m.cols}"]
    for line in m.to_dense():
        lines.append("".join("1" if b else "0" for b in line))
    return "\n".join(lines) + "\n"


def parse_text_matrix(text: str) -> BitMatrix:
    """解析文本矩阵."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        msg = "矩阵文本为空"
        raise MatrixFormatError(msg)
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        msg = f"首行应为 'rows cols'，得到: {lines[0]!r}"
        raise MatrixFormatError(msg)
    rows, cols = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != rows:
        msg = f"声明 {rows} 行，实际 {len(body)} 行"
        raise MatrixFormatError(msg)
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for r, line in enumerate(body):
        if len(line) != cols or set(line) - {"0", "1"}:
            msg = f"第 {r + 1} 行应为长度 {cols} 的 0/1 串"
            raise MatrixFormatError(msg)
        dense[r] = [ch == "1" for ch in line]
    return BitMatrix.from_dense(dense, cols=cols)


def read_text_matrix(path: Path | str) -> BitMatrix:
    """从文件读取文本矩阵."""
    return parse_text_matrix(Path(path).read_text(encoding="utf-8"))


def write_text_matrix(path: Path | str, m: BitMatrix) -> None:
    """写出文本矩阵."""
    Path(path).write_text(format_text_matrix(m), encoding="utf-8")
