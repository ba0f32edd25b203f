"""Strictly upper-triangular boolean matrices and the nilpotency estimate of alpha.

Matrices are stored as row bitsets.  All products are over the boolean
semiring (OR of ANDs), which has the same zero pattern as the integer product
of nonnegative matrices and cannot overflow.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InputError
from .graphcore import Graph, _bits, check_ordering, identity_ordering, relabel
from .oracle import optimal_coloring

EXHAUSTIVE_ORDERING_CAP = 9
SAMPLED_ORDERINGS = 20_000
_PERM_CHUNK = 40_320


@dataclass(frozen=True)
class StrictUpperMatrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise InputError(f"expected {self.n} rows, got {len(self.rows)}")
        for i, r in enumerate(self.rows):
            if r < 0 or r >> self.n or r & ((1 << (i + 1)) - 1):
                raise InputError(f"row {i} has entries on/below the diagonal or out of range")

    @classmethod
    def zero(cls, n: int) -> StrictUpperMatrix:
        return cls(n, (0,) * n)

    @classmethod
    def from_array(cls, a) -> StrictUpperMatrix:
        a = np.asarray(a)
        n = a.shape[0]
        rows = tuple(sum(1 << j for j in range(n) if a[i, j]) for i in range(n))
        return cls(n, rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def ones(self) -> list[tuple[int, int]]:
        """0-indexed positions of the one-entries, row-major."""
        return [(i, j) for i, r in enumerate(self.rows) for j in _bits(r)]

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_array(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for i, j in self.ones():
            a[i, j] = 1
        return a

    def __str__(self) -> str:
        return "\n".join(" ".join(str(self.entry(i, j)) for j in range(self.n)) for i in range(self.n))


def bool_matmul(a_rows: Sequence[int], b_rows: Sequence[int]) -> tuple[int, ...]:
    out = []
    for r in a_rows:
        acc = 0
        for j in _bits(r):
            acc |= b_rows[j]
        out.append(acc)
    return tuple(out)


def bool_power_is_zero(u: StrictUpperMatrix, h: int) -> bool:
    if h < 1:
        raise InputError(f"power must be >= 1, got {h}")
    p = u.rows
    for _ in range(h - 1):
        if not any(p):
            break
        p = bool_matmul(p, u.rows)
    return not any(p)


def nilpotency_index_by_powers(u: StrictUpperMatrix) -> int:
    """min h >= 0 with u^(h+1) = 0, by repeated multiplication."""
    h, p = 0, u.rows
    while any(p):
        p = bool_matmul(p, u.rows)
        h += 1
    return h


def nilpotency_index(u: StrictUpperMatrix) -> int:
    """min h >= 0 with u^(h+1) = 0.

    Equals the edge count of the longest index-increasing path through the
    one-entries; computed by a DP in index order.
    """
    level = [0] * u.n
    for i, r in enumerate(u.rows):
        for j in _bits(r):
            if level[i] + 1 > level[j]:
                level[j] = level[i] + 1
    return max(level, default=0)


def upper_from_graph(g: Graph, ordering: Optional[Sequence[int]] = None) -> StrictUpperMatrix:
    h = g if ordering is None else relabel(g, ordering)
    return StrictUpperMatrix(h.n, tuple(r & ~((1 << (i + 1)) - 1) for i, r in enumerate(h.rows)))


def alpha_by_nilpotency(g: Graph, ordering: Optional[Sequence[int]] = None) -> int:
    """Start from T = I and k = 0; set T = T.U until T = 0, then report n - k."""
    if g.n < 1:
        raise InputError("alpha_by_nilpotency needs n >= 1")
    u = upper_from_graph(g, ordering).rows
    t = tuple(1 << i for i in range(g.n))
    k = 0
    while True:
        t = bool_matmul(t, u)
        if not any(t):
            return g.n - k
        k += 1
        if k > g.n:
            raise RuntimeError("strictly upper-triangular matrix failed to vanish")


# -- model matrices (kp1 = k+1, blocks 1-indexed) -----------------------------------

def _check_kp1(kp1: int, n: int) -> int:
    if not 2 <= kp1 <= n:
        raise InputError(f"need 2 <= k+1 <= n, got k+1={kp1}, n={n}")
    return kp1 - 1


def build_T(kp1: int, n: int) -> StrictUpperMatrix:
    """Ones at 1-indexed (i, j) with 1 <= i <= k, 2 <= j <= k+1, i < j."""
    k = _check_kp1(kp1, n)
    rows = [((1 << (k + 1)) - 1) & ~((1 << (i + 1)) - 1) if i < k else 0 for i in range(n)]
    return StrictUpperMatrix(n, tuple(rows))


def build_C(kp1: int, n: int) -> StrictUpperMatrix:
    """Ones in column k+1, rows 1..k."""
    k = _check_kp1(kp1, n)
    return StrictUpperMatrix(n, tuple((1 << k) if i < k else 0 for i in range(n)))


def block_size(kp1: int, n: int) -> int:
    k = _check_kp1(kp1, n)
    return k * (n - k - 1)


def build_Sprime_block(kp1: int, n: int, block_bits: Sequence[int]) -> StrictUpperMatrix:
    """Rows 1..k, columns k+2..n filled row-major from ``block_bits``."""
    k = _check_kp1(kp1, n)
    width = n - k - 1
    if len(block_bits) != k * width:
        raise InputError(f"block needs {k * width} bits, got {len(block_bits)}")
    rows = [0] * n
    for idx, b in enumerate(block_bits):
        if b not in (0, 1, True, False):
            raise InputError(f"block bits must be 0/1, got {b!r}")
        if b:
            i, c = divmod(idx, width)
            rows[i] |= 1 << (k + 1 + c)
    return StrictUpperMatrix(n, tuple(rows))


def build_B(kp1: int, n: int) -> StrictUpperMatrix:
    return build_Sprime_block(kp1, n, [1] * block_size(kp1, n))


def _add(a: StrictUpperMatrix, b: StrictUpperMatrix) -> StrictUpperMatrix:
    return StrictUpperMatrix(a.n, tuple(x | y for x, y in zip(a.rows, b.rows)))


def build_S(kp1: int, n: int) -> StrictUpperMatrix:
    return _add(build_T(kp1, n), build_B(kp1, n))


def build_Sprime(kp1: int, n: int, block_bits: Sequence[int]) -> StrictUpperMatrix:
    # the primed T is never defined separately; it is read as the plain T
    return _add(build_T(kp1, n), build_Sprime_block(kp1, n, block_bits))


@dataclass(frozen=True)
class ModelMatrixSpec:
    kind: str
    kp1: int
    n: int
    block_bits: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("T", "C", "B", "S", "Sprime"):
            raise InputError(f"unknown matrix kind {self.kind!r}")
        if (self.block_bits is not None) != (self.kind == "Sprime"):
            raise InputError("block bits are given exactly for Sprime")

    def build(self) -> StrictUpperMatrix:
        if self.kind == "Sprime":
            return build_Sprime(self.kp1, self.n, self.block_bits)
        return {"T": build_T, "C": build_C, "B": build_B, "S": build_S}[self.kind](self.kp1, self.n)

    def predicted_index(self) -> int:
        """Index implied by the nilpotency claims: k for T, S, S'; 1 for C and for a nonempty B."""
        k = self.kp1 - 1
        if self.kind in ("T", "S", "Sprime"):
            return k
        if self.kind == "B":
            return 1 if block_size(self.kp1, self.n) else 0
        return 1


# -- ordering search -----------------------------------------------------------------

def ordering_indices(adj: np.ndarray, orderings: np.ndarray) -> np.ndarray:
    """Nilpotency index of every (graph, ordering) pair.

    ``adj`` is a (G, n, n) boolean stack, ``orderings`` a (P, n) array mapping
    vertex -> label.  Returns a (G, P) integer array.
    """
    n = orderings.shape[1]
    inv = np.argsort(orderings, axis=1)
    g_count, p_count = adj.shape[0], orderings.shape[0]
    level = np.zeros((n, g_count, p_count), dtype=np.int16)
    for t in range(1, n):
        vt = inv[:, t]
        for s in range(t):
            linked = adj[:, inv[:, s], vt]
            np.maximum(level[t], np.where(linked, level[s] + 1, 0), out=level[t])
    return level.max(axis=0)


def _all_orderings(n: int):
    it = itertools.permutations(range(n))
    while True:
        chunk = list(itertools.islice(it, _PERM_CHUNK))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.intp).reshape(len(chunk), n)


def min_index_all_orderings(adj: np.ndarray) -> np.ndarray:
    """Minimum over every ordering of the nilpotency index, per graph in a (G, n, n) stack."""
    n = adj.shape[1]
    best = np.full(adj.shape[0], max(n - 1, 0), dtype=np.int16)
    for chunk in _all_orderings(n):
        np.minimum(best, ordering_indices(adj, chunk).min(axis=1), out=best)
    return best


@dataclass(frozen=True)
class OrderingResult:
    alpha_est: int
    witness: tuple[int, ...]
    exhaustive: bool
    orderings_searched: int


def best_ordering_alpha(g: Graph, seed: int = 0, samples: int = SAMPLED_ORDERINGS) -> OrderingResult:
    """n minus the smallest nilpotency index over vertex orderings.

    Every ordering is tried when n <= EXHAUSTIVE_ORDERING_CAP and the witness is
    the lexicographically smallest minimizer.  Larger graphs get the identity
    plus ``samples`` seeded random orderings.
    """
    n = g.n
    if n < 1:
        raise InputError("best_ordering_alpha needs n >= 1")
    adj = g.adjacency_matrix()[None]
    if n <= EXHAUSTIVE_ORDERING_CAP:
        chunks, exhaustive = _all_orderings(n), True
    else:
        rng = random.Random(seed)
        sample = {identity_ordering(n)}
        while len(sample) < samples + 1:
            perm = list(range(n))
            rng.shuffle(perm)
            sample.add(tuple(perm))
        chunks, exhaustive = [np.array(sorted(sample), dtype=np.intp)], False
    best_idx, best_ord, searched = None, None, 0
    for chunk in chunks:
        idx = ordering_indices(adj, chunk)[0]
        searched += len(chunk)
        pos = int(idx.argmin())
        if best_idx is None or idx[pos] < best_idx:
            best_idx, best_ord = int(idx[pos]), tuple(int(x) for x in chunk[pos])
    return OrderingResult(n - best_idx, best_ord, exhaustive, searched)


def min_nilpotency_index(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Smallest nilpotency index over all orderings, with an ordering attaining it.

    Along any ordering, vertex levels (longest increasing path ending there)
    differ on every edge, so they properly colour the graph: no ordering goes
    below chromatic number - 1.  Labelling an optimal colouring's classes one
    after another attains that bound, and the returned index is measured on
    that ordering, not assumed.
    """
    n = g.n
    if n == 0:
        return 0, ()
    colors = optimal_coloring(g)
    by_class = sorted(range(n), key=lambda v: (colors[v], v))
    ordering = [0] * n
    for label, v in enumerate(by_class):
        ordering[v] = label
    ordering = tuple(ordering)
    index = nilpotency_index(upper_from_graph(g, ordering))
    if index != max(colors):
        raise RuntimeError("colour-class ordering missed the colouring lower bound")
    return index, ordering
