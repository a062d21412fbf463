"""逻辑算符基与码态制备."""

import logging
from collections.abc import Sequence
from typing import Literal, NamedTuple

import numpy as np

from gaugewise.codes.stabilizer import RowSpace, StabilizerCode, bits_to_int, int_to_bits
from gaugewise.errors import InvalidInputError, VerificationError
from gaugewise.f2 import BitMatrix, nullspace, row_reduce
from gaugewise.pauli import PauliOp, Tableau

logger = logging.getLogger(__name__)


class LogicalPair(NamedTuple):
    """一对共轭逻辑算符：x 与 z 反对易，与其他对中的算符对易."""

    x: PauliOp
    z: PauliOp


def _independent_mod(kernel: BitMatrix, stabilizers: BitMatrix) -> list[np.ndarray]:
    space = RowSpace(bits_to_int(row) for row in stabilizers.to_dense())
    return [row for row in kernel.to_dense() if space.add(bits_to_int(row))]


def _css_basis(code: StabilizerCode) -> list[LogicalPair]:
    css = code.as_css()
    assert css is not None
    n = code.n
    xs = _independent_mod(nullspace(css.hz), css.hx)
    zs = _independent_mod(nullspace(css.hx), css.hz)
    if len(xs) != code.k or len(zs) != code.k:
        msg = f"逻辑算符数目与 k={code.k} 不符"
        raise VerificationError(msg)
    if not xs:
        return []
    xm = np.array(xs, dtype=np.int64)
    zm = np.array(zs, dtype=np.int64)
    gram = BitMatrix.from_dense((xm @ zm.T) & 1)
    inverse = row_reduce(gram).transform.to_dense().astype(np.int64)
    # Z′ = (G⁻¹)ᵀ Z 使 X·Z′ᵀ = I
    dual = (inverse.T @ zm) & 1
    return [
        LogicalPair(PauliOp.x_type(n, np.flatnonzero(x).tolist()), PauliOp.z_type(n, np.flatnonzero(z).tolist()))
        for x, z in zip(xm, dual, strict=True)
    ]


def _form(a: int, b: int, n: int) -> int:
    mask = (1 << n) - 1
    ax, az = a & mask, a >> n
    bx, bz = b & mask, b >> n
    return ((ax & bz).bit_count() + (az & bx).bit_count()) & 1


def _symplectic_basis(code: StabilizerCode) -> list[LogicalPair]:
    n = code.n
    sym = code.symplectic.to_dense()
    swapped = BitMatrix.from_dense(np.hstack([sym[:, n:], sym[:, :n]]), cols=2 * n)
    pool = [bits_to_int(row) for row in nullspace(swapped).to_dense()]
    pairs: list[LogicalPair] = []
    while pool:
        a = pool.pop(0)
        partner = next((i for i, b in enumerate(pool) if _form(a, b, n)), None)
        if partner is None:
            continue
        b = pool.pop(partner)
        pool = [c ^ (a if _form(c, b, n) else 0) ^ (b if _form(c, a, n) else 0) for c in pool]
        pairs.append(
            LogicalPair(
                PauliOp.from_symplectic(int_to_bits(a, 2 * n)),
                PauliOp.from_symplectic(int_to_bits(b, 2 * n)),
            )
        )
    if len(pairs) != code.k:
        msg = f"辛 Gram–Schmidt 得到 {len(pairs)} 对逻辑算符，k={code.k}"
        raise VerificationError(msg)
    return pairs


def logical_basis(code: StabilizerCode) -> list[LogicalPair]:
    """逻辑算符的辛基；CSS 码给出纯 X 型与纯 Z 型算符."""
    if code.is_css:
        return _css_basis(code)
    return _symplectic_basis(code)


def code_state(
    code: StabilizerCode,
    basis: Literal["0", "+"] = "0",
    signs: Sequence[int] | None = None,
    logicals: Sequence[LogicalPair] | None = None,
) -> Tableau:
    """制备码态：检查算符加上每个逻辑比特的 Z̄（或 X̄）本征态."""
    pairs = list(logicals) if logicals is not None else logical_basis(code)
    chosen_signs = list(signs) if signs is not None else [1] * len(pairs)
    if len(chosen_signs) != len(pairs):
        msg = f"符号数 {len(chosen_signs)} 与逻辑比特数 {len(pairs)} 不符"
        raise InvalidInputError(msg)
    stabs = [code.checks[i] for i in code.independent_checks()]
    for pair, sign in zip(pairs, chosen_signs, strict=True):
        op = pair.z if basis == "0" else pair.x
        stabs.append(op.with_sign(sign))
    return Tableau.from_stabilizers(stabs, n=code.n)
