"""Simple undirected graphs on vertices ``0..n-1``.

Adjacency is dense: row ``i`` is an integer bitset whose bit ``j`` is set iff
``i`` and ``j`` are adjacent.  Graphs are immutable and hashable, so they can be
shared across workers and used as cache keys.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InputError

ENUMERATION_CAP = 7
PRNG_NAME = "MT19937 (Python random.Random, integer seed)"


@lru_cache(maxsize=None)
def pair_order(n: int) -> tuple[tuple[int, int], ...]:
    """Upper-triangle positions in graph6 order: (0,1), (0,2), (1,2), (0,3), ..."""
    return tuple((i, j) for j in range(1, n) for i in range(j))


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def m(self) -> int:
        return sum(self.degrees()) // 2

    def neighbors(self, v: int) -> list[int]:
        r = self.rows[v]
        return [u for u in range(self.n) if r >> u & 1]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(i, j)`` with ``i < j``, sorted."""
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.rows[i] >> j & 1]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges():
            a[i, j] = a[j, i] = True
        return a

    def code(self) -> int:
        """Upper-triangle bit vector as an integer, first pair most significant."""
        c = 0
        for i, j in pair_order(self.n):
            c = (c << 1) | (self.rows[i] >> j & 1)
        return c

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(self.rows)))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return all(self.rows[v] & mask == 0 for v in _bits(mask))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for k, u in enumerate(vs) for v in vs[k + 1:])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise InputError(f"vertex count must be >= 0, got {n}")
    rows = [0] * n
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def from_code(n: int, code: int) -> Graph:
    pairs = pair_order(n)
    rows = [0] * n
    shift = len(pairs) - 1
    for i, j in pairs:
        if code >> shift & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        shift -= 1
    return Graph(n, tuple(rows))


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degrees(), reverse=True)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise InputError("connectivity is undefined for the empty vertex set")
    seen = frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.rows[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def check_ordering(ordering: Sequence[int], n: int) -> tuple[int, ...]:
    ordering = tuple(int(x) for x in ordering)
    if len(ordering) != n or sorted(ordering) != list(range(n)):
        raise InputError(f"not a permutation of 0..{n - 1}: {list(ordering)}")
    return ordering


def identity_ordering(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def relabel(g: Graph, ordering: Sequence[int]) -> Graph:
    """Rename vertex ``i`` to ``ordering[i]``."""
    ordering = check_ordering(ordering, g.n)
    rows = [0] * g.n
    for i, j in g.edges():
        a, b = ordering[i], ordering[j]
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    return Graph(g.n, tuple(rows))


def split_model_graph(alpha: int, n: int) -> Graph:
    """Clique on ``0..n-alpha-1`` fully joined to an independent set on the rest."""
    if not 1 <= alpha <= n:
        raise InputError(f"need 1 <= alpha <= n, got alpha={alpha}, n={n}")
    c = n - alpha
    clique = (1 << c) - 1
    full = (1 << n) - 1
    rows = [full & ~(1 << v) for v in range(c)] + [clique] * alpha
    return Graph(n, tuple(rows))


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        return path(n)
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p): one uniform draw per pair, pairs in graph6 order.

    Reproducible given ``(n, p, seed)``; the generator is ``PRNG_NAME``.
    """
    rng = random.Random(seed)
    return from_edge_list(n, [pair for pair in pair_order(n) if rng.random() < p])


def connected_codes(n: int) -> np.ndarray:
    """Sorted upper-triangle codes of all connected labeled graphs on ``n`` vertices."""
    if not 1 <= n <= ENUMERATION_CAP:
        raise InputError(f"enumeration needs 1 <= n <= {ENUMERATION_CAP}, got {n}")
    pairs = pair_order(n)
    npairs = len(pairs)
    codes = np.arange(1 << npairs, dtype=np.int64)
    rows = np.zeros((n, codes.size), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        bit = (codes >> (npairs - 1 - k)) & 1
        rows[i] |= bit << j
        rows[j] |= bit << i
    seen = np.ones(codes.size, dtype=np.int64)
    for _ in range(n):
        nxt = seen.copy()
        for v in range(n):
            nxt |= np.where((seen >> v) & 1 == 1, rows[v], 0)
        seen = nxt
    return codes[seen == (1 << n) - 1]


def enumerate_connected(n: int) -> Iterator[Graph]:
    """Every connected labeled graph on ``n`` vertices, once each, by increasing code."""
    for code in connected_codes(n).tolist():
        yield from_code(n, code)
