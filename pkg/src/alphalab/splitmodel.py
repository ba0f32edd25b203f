"""Canonical split graphs and the degree-sequence estimate of alpha."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .degseq import diff, dominates, hh_realizable
from .errors import InputError
from .graphcore import Graph


@dataclass(frozen=True)
class SplitModel:
    alpha: int
    n: int

    def __post_init__(self):
        if not 1 <= self.alpha <= self.n:
            raise InputError(f"need 1 <= alpha <= n, got alpha={self.alpha}, n={self.n}")


@dataclass(frozen=True)
class SplitPartition:
    independent: frozenset[int]
    clique: frozenset[int]

    def holds_in(self, g: Graph) -> bool:
        """True iff the parts cover V disjointly, are independent and a clique in ``g``."""
        return (
            not self.independent & self.clique
            and self.independent | self.clique == frozenset(range(g.n))
            and g.is_independent(self.independent)
            and g.is_clique(sorted(self.clique))
        )


def model_degree_sequence(alpha: int, n: int) -> list[int]:
    SplitModel(alpha, n)
    return [n - 1] * (n - alpha) + [n - alpha] * alpha


def construct_split_graph(g: Graph, independent: Iterable[int]) -> Graph:
    """Join every independent vertex to every other vertex, and complete the rest into a clique."""
    ind = 0
    for v in independent:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range for n={g.n}")
        ind |= 1 << v
    if any(g.rows[v] & ind for v in range(g.n) if ind >> v & 1):
        raise InputError("the given vertex set is not independent")
    full = (1 << g.n) - 1
    cover = full & ~ind
    rows = []
    for v in range(g.n):
        if ind >> v & 1:
            rows.append(g.rows[v] | cover)
        else:
            rows.append(full & ~(1 << v))
    return Graph(g.n, tuple(rows))


def _passing(s: tuple[int, ...], stop_at_first: bool) -> list[int]:
    n = len(s)
    found = []
    for alpha in range(1, n + 1):
        model = model_degree_sequence(alpha, n)
        if dominates(model, s) and hh_realizable(diff(model, s)):
            found.append(alpha)
            if stop_at_first:
                break
    return found


def _check_sorted(s: Sequence[int]) -> tuple[int, ...]:
    s = tuple(int(x) for x in s)
    if not s:
        raise InputError("degree sequence must be nonempty")
    if any(a < b for a, b in zip(s, s[1:])):
        raise InputError(f"degree sequence must be nonincreasing: {list(s)}")
    return s


@lru_cache(maxsize=1 << 16)
def _first_passing(s: tuple[int, ...]) -> Optional[int]:
    found = _passing(s, stop_at_first=True)
    return found[0] if found else None


def alpha_by_degree_sequence(s: Sequence[int]) -> Optional[int]:
    """First alpha in 1..n whose split model dominates ``s`` with a graphic difference.

    This is an estimate, not the true independence number.  ``None`` means no
    alpha in 1..n passed.
    """
    return _first_passing(_check_sorted(s))


def count_passing_alphas(s: Sequence[int]) -> list[int]:
    return _passing(_check_sorted(s), stop_at_first=False)
