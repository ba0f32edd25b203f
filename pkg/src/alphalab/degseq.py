"""Degree-sequence arithmetic and graphicality tests."""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import InputError
from .graphcore import Graph, pair_order

REALIZATION_CAP = 8


def _sorted_desc(s: Sequence[int]) -> list[int]:
    return sorted((int(x) for x in s), reverse=True)


def _check_lengths(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise InputError(f"sequence lengths differ: {len(a)} vs {len(b)}")


def dominates(s_prime: Sequence[int], s: Sequence[int]) -> bool:
    """Componentwise ``s_prime >= s`` after sorting both nonincreasing."""
    _check_lengths(s_prime, s)
    return all(a >= b for a, b in zip(_sorted_desc(s_prime), _sorted_desc(s)))


def diff(s_prime: Sequence[int], s: Sequence[int]) -> list[int]:
    """Componentwise difference, pairing entries by sorted position.

    The result follows the order of the sorted inputs and is not re-sorted,
    so ``diff((5,5,5,3,3,3), (2,2,2,2,1,1)) == [3,3,3,1,2,2]``.
    """
    _check_lengths(s_prime, s)
    return [a - b for a, b in zip(_sorted_desc(s_prime), _sorted_desc(s))]


def hh_realizable(s: Sequence[int]) -> bool:
    """Havel-Hakimi, run step for step.

    Steps 1 (max entry <= n-1) and 2 (even count of odd entries) run once on
    entry; the loop then checks for negatives, accepts all-zero, re-sorts, and
    removes the head ``d`` while decrementing the next ``d`` entries.
    """
    seq = [int(x) for x in s]
    n = len(seq)
    if any(d > n - 1 for d in seq):
        return False
    if sum(d % 2 for d in seq) % 2 == 1:
        return False
    while True:
        if any(d < 0 for d in seq):
            return False
        if all(d == 0 for d in seq):
            return True
        seq.sort(reverse=True)
        head, rest = seq[0], seq[1:]
        if head > len(rest):
            return False
        for i in range(head):
            rest[i] -= 1
        seq = rest


def erdos_gallai_realizable(s: Sequence[int]) -> bool:
    d = _sorted_desc(s)
    if any(x < 0 for x in d) or sum(d) % 2:
        return False
    n = len(d)
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        if prefix > k * (k - 1) + sum(min(k, x) for x in d[k:]):
            return False
    return True


def realization_search(s: Sequence[int]) -> Optional[Graph]:
    """Find a simple graph with sorted degree sequence ``s`` by exhaustive search.

    Depth-first over the upper-triangle pairs in graph6 order, deciding each
    pair absent/present.  The only pruning is local feasibility: a vertex's
    residual degree can never exceed the pairs still open to it.  Returns
    ``None`` when the search space is exhausted.
    """
    target = _sorted_desc(s)
    n = len(target)
    if n > REALIZATION_CAP:
        raise InputError(f"realization search is capped at length {REALIZATION_CAP}, got {n}")
    if any(x < 0 for x in target):
        return None
    pairs = pair_order(n)
    # open_after[k][v]: pairs at index >= k that touch v
    open_after = [[0] * n for _ in range(len(pairs) + 1)]
    for k in range(len(pairs) - 1, -1, -1):
        open_after[k] = open_after[k + 1][:]
        i, j = pairs[k]
        open_after[k][i] += 1
        open_after[k][j] += 1
    residual = target[:]
    chosen: list[tuple[int, int]] = []

    def feasible(k: int) -> bool:
        avail = open_after[k]
        return all(0 <= residual[v] <= avail[v] for v in range(n))

    def dfs(k: int) -> bool:
        if k == len(pairs):
            return all(r == 0 for r in residual)
        i, j = pairs[k]
        if residual[i] > 0 and residual[j] > 0:
            residual[i] -= 1
            residual[j] -= 1
            chosen.append((i, j))
            if feasible(k + 1) and dfs(k + 1):
                return True
            chosen.pop()
            residual[i] += 1
            residual[j] += 1
        return feasible(k + 1) and dfs(k + 1)

    if not feasible(0) or not dfs(0):
        return None
    rows = [0] * n
    for i, j in chosen:
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def parse_sequence(text: str) -> list[int]:
    """Comma-separated integers, e.g. ``"3,3,2,2"``."""
    text = text.strip().strip("()[]")
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"not a comma-separated integer list: {text!r}") from None
