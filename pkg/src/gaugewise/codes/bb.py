"""双变量双循环（BB）码.

单项式 x^a y^b 编号为 a·m + b；单项式矩阵满足 M_μ[ν, μν] = 1。
H_X = [A|B]，H_Z = [Bᵀ|Aᵀ]，比特顺序为先全部 L 比特、后全部 R 比特。
"""

import logging
import re
from collections.abc import Mapping, Sequence
from typing import Literal

import numpy as np

from gaugewise.codes.stabilizer import CssCode
from gaugewise.errors import InvalidInputError, VerificationError
from gaugewise.f2 import BitMatrix
from gaugewise.pauli import PauliOp

logger = logging.getLogger(__name__)

Monomial = tuple[int, int]
Polynomial = list[Monomial]
LogicalKind = Literal["X", "X'", "Z", "Z'"]

_MONOMIAL_RE = re.compile(r"^(?:x(?:\^?\{?(\d+)\}?)?)?(?:y(?:\^?\{?(\d+)\}?)?)?$")


def parse_monomial(text: str) -> Monomial:
    """解析 "1"、"x"、"x^5y^3"、"x^{5}y^{3}" 之类的单项式."""
    body = text.replace(" ", "")
    if body == "1":
        return (0, 0)
    match = _MONOMIAL_RE.match(body)
    if not body or match is None:
        msg = f"无法解析单项式: {text!r}"
        raise InvalidInputError(msg)
    a = 0 if "x" not in body else int(match.group(1) or 1)
    b = 0 if "y" not in body else int(match.group(2) or 1)
    return (a, b)


def format_monomial(mono: Monomial) -> str:
    a, b = mono
    parts = [("x" if a == 1 else f"x^{a}") if a else "", ("y" if b == 1 else f"y^{b}") if b else ""]
    return "".join(parts) or "1"


class BBCode(CssCode):
    """BB 码，附带以多项式表给出的逻辑算符."""

    def __init__(
        self,
        l: int,  # noqa: E741
        m: int,
        a: Sequence[Monomial],
        b: Sequence[Monomial],
        name: str = "bb",
        tables: Mapping[str, Sequence[Monomial]] | None = None,
    ) -> None:
        if l < 1 or m < 1:
            msg = f"l, m 必须为正整数: l={l}, m={m}"
            raise InvalidInputError(msg)
        self.l = l
        self.m = m
        self.a = [self.checked_monomial(mono) for mono in a]
        self.b = [self.checked_monomial(mono) for mono in b]
        self.tables = {key: [self.checked_monomial(mono) for mono in poly] for key, poly in (tables or {}).items()}
        size = l * m
        big_a = self.poly_matrix(self.a)
        big_b = self.poly_matrix(self.b)
        hx = BitMatrix.from_dense(np.hstack([big_a, big_b]))
        hz = BitMatrix.from_dense(np.hstack([big_b.T, big_a.T]))
        monos = [self.monomial(i) for i in range(size)]
        super().__init__(
            hx,
            hz,
            x_labels=[f"X[{format_monomial(mu)}]" for mu in monos],
            z_labels=[f"Z[{format_monomial(mu)}]" for mu in monos],
            name=name,
        )
        logger.debug(f"构造 BB 码 {name}: l={l}, m={m}, n={self.n}")

    def checked_monomial(self, mono: Monomial) -> Monomial:
        ax, ay = mono
        if not (0 <= ax < self.l and 0 <= ay < self.m):
            msg = f"单项式指数 {mono} 未约化到 [0,{self.l})×[0,{self.m})"
            raise InvalidInputError(msg)
        return (int(ax), int(ay))

    # ---- 单项式代数 ----

    @property
    def size(self) -> int:
        """单项式集合的大小 l·m."""
        return self.l * self.m

    def index(self, mono: Monomial) -> int:
        return (mono[0] % self.l) * self.m + (mono[1] % self.m)

    def monomial(self, index: int) -> Monomial:
        return divmod(index, self.m)

    def mul(self, p: Monomial, q: Monomial) -> Monomial:
        return ((p[0] + q[0]) % self.l, (p[1] + q[1]) % self.m)

    def inverse(self, p: Monomial) -> Monomial:
        return ((-p[0]) % self.l, (-p[1]) % self.m)

    def monomial_matrix(self, mono: Monomial) -> np.ndarray:
        """置换矩阵 M_μ[ν, μν] = 1."""
        mat = np.zeros((self.size, self.size), dtype=np.uint8)
        for nu in range(self.size):
            mat[nu, self.index(self.mul(mono, self.monomial(nu)))] = 1
        return mat

    def poly_matrix(self, poly: Sequence[Monomial]) -> np.ndarray:
        mat = np.zeros((self.size, self.size), dtype=np.uint8)
        for mono in poly:
            mat ^= self.monomial_matrix(mono)
        return mat

    def shifted(self, alpha: Monomial, poly: Sequence[Monomial], transpose: bool = False) -> list[int]:
        """多项式 α·p（transpose 时为 α·pᵀ）对应的单项式下标，重复项按 F2 相消."""
        counts: dict[int, int] = {}
        for mono in poly:
            term = self.inverse(mono) if transpose else mono
            idx = self.index(self.mul(alpha, term))
            counts[idx] = counts.get(idx, 0) ^ 1
        return sorted(i for i, c in counts.items() if c)

    def l_qubit(self, mono: Monomial) -> int:
        return self.index(mono)

    def r_qubit(self, mono: Monomial) -> int:
        return self.size + self.index(mono)

    def qubit_label(self, q: int) -> str:
        kind = "L" if q < self.size else "R"
        return f"{kind}[{format_monomial(self.monomial(q % self.size))}]"


def bb_build(
    l: int,  # noqa: E741
    m: int,
    a: Sequence[Monomial],
    b: Sequence[Monomial],
    name: str = "bb",
    tables: Mapping[str, Sequence[Monomial]] | None = None,
) -> BBCode:
    """由多项式 A、B 构造 BB 码."""
    return BBCode(l, m, a, b, name=name, tables=tables)


def bb_logical(
    code: BBCode,
    alpha: Monomial,
    which: LogicalKind,
    polys: Mapping[str, Sequence[Monomial]] | None = None,
) -> PauliOp:
    """按多项式表构造逻辑算符并校验.

    X̄_α = X(αf, 0)，X̄′_β = X(βg, βh)，Z̄_β = Z(βhᵀ, βgᵀ)，Z̄′_α = Z(0, αfᵀ)。
    """
    table = {**code.tables, **(polys or {})}
    needed = {"X": ("f",), "Z'": ("f",), "X'": ("g", "h"), "Z": ("g", "h")}[which]
    missing = [key for key in needed if key not in table]
    if missing:
        msg = f"码 {code.name} 缺少多项式 {missing}，无法构造 {which}"
        raise InvalidInputError(msg)
    alpha = code.checked_monomial(alpha)
    n, size = code.n, code.size
    if which == "X":
        op = PauliOp.x_type(n, code.shifted(alpha, table["f"]))
    elif which == "X'":
        left = code.shifted(alpha, table["g"])
        right = [size + i for i in code.shifted(alpha, table["h"])]
        op = PauliOp.x_type(n, left + right)
    elif which == "Z":
        left = code.shifted(alpha, table["h"], transpose=True)
        right = [size + i for i in code.shifted(alpha, table["g"], transpose=True)]
        op = PauliOp.z_type(n, left + right)
    else:
        op = PauliOp.z_type(n, [size + i for i in code.shifted(alpha, table["f"], transpose=True)])
    if not code.commutes_with_all(op):
        msg = f"{which}_{format_monomial(alpha)} 与检查算符不对易，多项式表有误"
        raise VerificationError(msg)
    if code.in_check_group(op):
        msg = f"{which}_{format_monomial(alpha)} 属于稳定子群，多项式表有误"
        raise VerificationError(msg)
    return op
