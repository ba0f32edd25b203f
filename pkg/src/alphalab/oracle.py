"""Exact ground truth: independence number with witness, and chromatic number."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graphcore import Graph, _bits, pair_order

ALPHA_EXACT_CAP = 40
ALPHA_NAIVE_CAP = 20
CHROMATIC_CAP = 10


@dataclass(frozen=True)
class AlphaWitness:
    alpha: int
    witness: tuple[int, ...]


def _clique_cover_bound(rows: tuple[int, ...], cand: int) -> int:
    """Number of cliques in a greedy clique cover of ``cand``; bounds alpha from above."""
    count = 0
    while cand:
        v = (cand & -cand).bit_length() - 1
        clique = 1 << v
        common = rows[v] & cand
        while common:
            u = (common & -common).bit_length() - 1
            clique |= 1 << u
            common &= rows[u]
        cand &= ~clique
        count += 1
    return count


def alpha_exact(g: Graph) -> AlphaWitness:
    """Branch and bound on the lowest-indexed candidate, include-branch first.

    Only strictly larger sets replace the incumbent, so the reported witness
    is the lexicographically smallest maximum independent set.
    """
    if g.n < 1:
        raise InputError("alpha_exact needs n >= 1")
    if g.n > ALPHA_EXACT_CAP:
        raise InputError(f"alpha_exact is capped at n={ALPHA_EXACT_CAP}, got {g.n}")
    rows = g.rows
    best_size = 0
    best_set = 0

    def search(cand: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_set
        if not cand:
            if size > best_size:
                best_size, best_set = size, chosen
            return
        if size + _clique_cover_bound(rows, cand) <= best_size:
            return
        v = (cand & -cand).bit_length() - 1
        bit = 1 << v
        search(cand & ~bit & ~rows[v], chosen | bit, size + 1)
        if rows[v] & cand:
            search(cand & ~bit, chosen, size)

    search((1 << g.n) - 1, 0, 0)
    return AlphaWitness(best_size, tuple(_bits(best_set)))


def alpha_naive(g: Graph) -> int:
    """Test every vertex subset for independence and keep the largest."""
    if g.n > ALPHA_NAIVE_CAP:
        raise InputError(f"alpha_naive is capped at n={ALPHA_NAIVE_CAP}, got {g.n}")
    masks = np.arange(1 << g.n, dtype=np.int64)
    independent = np.ones(masks.size, dtype=bool)
    for v, row in enumerate(g.rows):
        has_v = (masks >> v) & 1 == 1
        independent &= ~(has_v & ((masks & row) != 0))
    return int(np.bitwise_count(masks[independent]).max())


def alpha_naive_codes(n: int, codes: np.ndarray) -> np.ndarray:
    """Independence numbers for many graphs given as upper-triangle codes.

    A vertex subset is independent iff the code has no bit among the pairs
    inside it; every subset is tried.
    """
    if n > ALPHA_NAIVE_CAP:
        raise InputError(f"alpha_naive is capped at n={ALPHA_NAIVE_CAP}, got {n}")
    pairs = pair_order(n)
    codes = np.asarray(codes, dtype=np.int64)
    best = np.zeros(codes.shape, dtype=np.int64)
    for subset in range(1 << n):
        inside = 0
        for k, (i, j) in enumerate(pairs):
            if subset >> i & 1 and subset >> j & 1:
                inside |= 1 << (len(pairs) - 1 - k)
        size = subset.bit_count()
        np.maximum(best, np.where(codes & inside == 0, size, 0), out=best)
    return best


def is_vertex_cover(g: Graph, cover) -> bool:
    cover = set(cover)
    return all(u in cover or v in cover for u, v in g.edges())


def optimal_coloring(g: Graph) -> list[int]:
    """A proper colouring with the fewest colours, trying k = 1, 2, ... in turn."""
    if g.n > CHROMATIC_CAP:
        raise InputError(f"chromatic search is capped at n={CHROMATIC_CAP}, got {g.n}")
    n = g.n
    if n == 0:
        return []
    # color vertices in descending-degree order; ties by index
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    neighbors = [g.neighbors(v) for v in range(n)]
    color = [-1] * n

    def place(pos: int, used: int, k: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        taken = {color[u] for u in neighbors[v]}
        # a fresh color is interchangeable with any other fresh one
        for c in range(min(used + 1, k)):
            if c not in taken:
                color[v] = c
                if place(pos + 1, max(used, c + 1), k):
                    return True
        color[v] = -1
        return False

    k = 1
    while not place(0, 0, k):
        k += 1
    return color


def chromatic_exact(g: Graph) -> int:
    return max(optimal_coloring(g), default=-1) + 1
