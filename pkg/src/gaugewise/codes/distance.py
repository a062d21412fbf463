"""码距计算：小规模精确枚举与随机信息集搜索上界."""

import logging
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from gaugewise.codes.stabilizer import RowSpace, StabilizerCode, bits_to_int
from gaugewise.config import Settings, get_settings
from gaugewise.errors import BudgetExceededError, InvalidInputError, VerificationError
from gaugewise.f2 import BitMatrix, eliminate_in_place, nullspace, pack_bits, unpack_bits
from gaugewise.pauli import PauliOp

logger = logging.getLogger(__name__)


class UpperBound(NamedTuple):
    """距离上界及其见证逻辑算符."""

    weight: int
    witness: PauliOp


def _to_int(vec: NDArray[np.uint8]) -> int:
    return int.from_bytes(np.packbits(vec, bitorder="little").tobytes(), "little")


# ---- 精确枚举 ----


def _css_tables(code: StabilizerCode) -> list[tuple[str, list[int], RowSpace]] | None:
    css = code.as_css()
    if css is None:
        return None
    tables: list[tuple[str, list[int], RowSpace]] = []
    # X 型错误的症状来自 hz，Z 型来自 hx
    for kind, detect, stab in (("X", css.hz, css.hx), ("Z", css.hx, css.hz)):
        dense = detect.to_dense()
        syndromes = [bits_to_int(dense[:, q]) for q in range(code.n)]
        space = RowSpace(bits_to_int(row) for row in stab.to_dense())
        tables.append((kind, syndromes, space))
    return tables


def _pauli_syndromes(code: StabilizerCode) -> dict[tuple[int, str], int]:
    table: dict[tuple[int, str], int] = {}
    for q in range(code.n):
        for letter, (xs, zs) in {"X": ([q], []), "Y": ([q], [q]), "Z": ([], [q])}.items():
            op = PauliOp.from_support(code.n, xs, zs)
            table[(q, letter)] = bits_to_int(not c.commutes(op) for c in code.checks)
    return table


def minimum_logical(code: StabilizerCode, w_max: int, budget: int | None = None) -> PauliOp | None:
    """按权重升序枚举，返回权重最小的逻辑算符（不超过 w_max）."""
    if code.k == 0 or w_max < 1:
        return None
    budget = budget if budget is not None else get_settings().distance_exact_budget
    n = code.n
    tables = _css_tables(code)
    pauli_table = _pauli_syndromes(code) if tables is None else {}
    spent = 0
    for w in range(1, min(w_max, n) + 1):
        cost = comb(n, w) * (2 if tables is not None else 3**w)
        spent += cost
        if spent > budget:
            msg = f"精确码距枚举到权重 {w} 需要 {spent} 个候选，超出预算 {budget}"
            raise BudgetExceededError(msg)
        logger.debug(f"枚举权重 {w} 的候选，共 {cost} 个")
        found = _css_weight(code, tables, w) if tables is not None else _generic_weight(code, pauli_table, w)
        if found is not None:
            return found
    return None


def _css_weight(code: StabilizerCode, tables: list[tuple[str, list[int], RowSpace]], w: int) -> PauliOp | None:
    for kind, syndromes, stab in tables:
        for support in combinations(range(code.n), w):
            acc = 0
            for q in support:
                acc ^= syndromes[q]
            if acc:
                continue
            vec = 0
            for q in support:
                vec |= 1 << q
            if vec not in stab:
                if kind == "X":
                    return PauliOp.x_type(code.n, support)
                return PauliOp.z_type(code.n, support)
    return None


def _generic_weight(code: StabilizerCode, table: dict[tuple[int, str], int], w: int) -> PauliOp | None:
    n = code.n
    for support in combinations(range(n), w):
        for letters in product("XYZ", repeat=w):
            acc = 0
            for q, letter in zip(support, letters, strict=True):
                acc ^= table[(q, letter)]
            if acc:
                continue
            xs = [q for q, letter in zip(support, letters, strict=True) if letter in "XY"]
            zs = [q for q, letter in zip(support, letters, strict=True) if letter in "ZY"]
            op = PauliOp.from_support(n, xs, zs)
            if not code.in_check_group(op):
                return op
    return None


def distance_exact(code: StabilizerCode, w_max: int, budget: int | None = None) -> int | None:
    """精确码距；不超过 w_max 时无逻辑算符返回 None."""
    witness = minimum_logical(code, w_max, budget)
    return witness.weight if witness is not None else None


# ---- 随机信息集搜索 ----


@dataclass(frozen=True, eq=False)
class _SearchSpace:
    """候选码字空间：kernel 行张成所有与检查对易的向量."""

    kind: str
    kernel: NDArray[np.uint8]
    stabilizers: RowSpace
    qubits: int

    @property
    def symplectic(self) -> bool:
        return self.kind == "P"

    def witness(self, vec: NDArray[np.uint8]) -> PauliOp:
        support = [int(q) for q in np.flatnonzero(vec)]
        if self.kind == "X":
            return PauliOp.x_type(self.qubits, support)
        if self.kind == "Z":
            return PauliOp.z_type(self.qubits, support)
        return PauliOp.from_symplectic(vec)


def _search_spaces(code: StabilizerCode) -> list[_SearchSpace]:
    css = code.as_css()
    n = code.n
    if css is not None:
        return [
            _SearchSpace("X", nullspace(css.hz).to_dense(), RowSpace(_to_int(r) for r in css.hx.to_dense()), n),
            _SearchSpace("Z", nullspace(css.hx).to_dense(), RowSpace(_to_int(r) for r in css.hz.to_dense()), n),
        ]
    sym = code.symplectic.to_dense()
    # ⟨s, v⟩ = s_x·v_z + s_z·v_x，故正规化子是 [s_z | s_x] 的零空间
    swapped = BitMatrix.from_dense(np.hstack([sym[:, n:], sym[:, :n]]), cols=2 * n)
    stabs = RowSpace(_to_int(r) for r in sym)
    return [_SearchSpace("P", nullspace(swapped).to_dense(), stabs, n)]


def _trial(space: _SearchSpace, rng: np.random.Generator, bound: int) -> tuple[int, NDArray[np.uint8]] | None:
    """一次随机置换 + RREF，检查单行与两行之和中权重低于 bound 的逻辑码字."""
    n = space.qubits
    kernel = space.kernel
    rows, width = kernel.shape
    if rows == 0:
        return None
    perm = rng.permutation(n)
    order = np.stack([perm, perm + n], axis=1).reshape(-1) if space.symplectic else perm
    work = pack_bits(np.ascontiguousarray(kernel[:, order]))
    eliminate_in_place(work, width)
    reduced = np.zeros_like(kernel)
    reduced[:, order] = unpack_bits(work, width)
    if space.symplectic:
        px, pz = pack_bits(reduced[:, :n]), pack_bits(reduced[:, n:])
    else:
        px = pack_bits(reduced)
        pz = np.zeros_like(px)
    pair_x = px[:, None, :] ^ px[None, :, :]
    pair_z = pz[:, None, :] ^ pz[None, :, :]
    weights = np.bitwise_count(pair_x | pair_z).sum(axis=2)
    # 对角线放单行权重
    single = np.bitwise_count(px | pz).sum(axis=1)
    weights[np.arange(rows), np.arange(rows)] = single
    iu, ju = np.triu_indices(rows)
    flat = weights[iu, ju]
    for idx in np.argsort(flat, kind="stable"):
        w = int(flat[idx])
        if w >= bound:
            break
        i, j = int(iu[idx]), int(ju[idx])
        vec = reduced[i] if i == j else reduced[i] ^ reduced[j]
        if _to_int(vec) not in space.stabilizers:
            return w, vec.copy()
    return None


def _run_shard(
    spaces: list[_SearchSpace], seed: int, shard: int, trials: int
) -> tuple[int, _SearchSpace, NDArray[np.uint8]] | None:
    rng = np.random.default_rng([seed, shard])
    best: tuple[int, _SearchSpace, NDArray[np.uint8]] | None = None
    for _ in range(trials):
        for space in spaces:
            bound = best[0] if best is not None else space.qubits + 1
            found = _trial(space, rng, bound)
            if found is not None:
                best = (found[0], space, found[1])
    return best


def _shard_trials(trials: int, shards: int) -> Iterator[int]:
    for s in range(shards):
        yield trials // shards + (1 if s < trials % shards else 0)


def distance_upper(
    code: StabilizerCode,
    trials: int | None = None,
    seed: int = 0,
    settings: Settings | None = None,
) -> UpperBound:
    """随机信息集搜索给出码距上界与见证算符.

    试验按固定分片数分配，每片使用由 (seed, 分片号) 派生的独立随机流；
    合并时取权重最小者，平局取分片号最小者。
    """
    settings = settings or get_settings()
    trials = trials if trials is not None else settings.distance_upper_trials
    if trials < 1:
        msg = f"trials 必须 ≥ 1，得到 {trials}"
        raise InvalidInputError(msg)
    if code.k == 0:
        msg = f"码 {code.name} 没有逻辑比特，距离无定义"
        raise InvalidInputError(msg)
    spaces = _search_spaces(code)
    shards = max(1, settings.search_shards)
    counts = list(_shard_trials(trials, shards))
    logger.info(f"距离上界搜索: 码 {code.name}, n={code.n}, {trials} 次试验, {shards} 个分片")
    with ThreadPoolExecutor(max_workers=settings.worker_threads) as pool:
        results = list(pool.map(lambda s: _run_shard(spaces, seed, s, counts[s]), range(shards)))
    best: tuple[int, int, _SearchSpace, NDArray[np.uint8]] | None = None
    for shard, found in enumerate(results):
        if found is not None and (best is None or found[0] < best[0]):
            best = (found[0], shard, found[1], found[2])
    if best is None:
        msg = f"码 {code.name} 的距离上界搜索未找到逻辑算符"
        raise VerificationError(msg)
    weight, shard, space, vec = best
    witness = space.witness(vec)
    if witness.weight != weight or not code.is_logical(witness):
        msg = f"见证算符 {witness} 未通过逻辑性校验"
        raise VerificationError(msg)
    logger.info(f"距离上界: {weight}（分片 {shard}）")
    return UpperBound(weight, witness)
