"""Run every estimate against the exact oracle and aggregate the outcome.

Two kinds of failure are kept apart.  A *finding* is a claim about alpha that
the data contradicts (e.g. the nilpotency estimate disagrees with the
oracle).  An *internal* failure means two routes inside this package that must
agree did not, which is a bug here, not a statement about the algorithms.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field, fields
from functools import lru_cache
from multiprocessing import Pool
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InputError
from .formats import emit_graph6
from .graphcore import (
    ENUMERATION_CAP,
    PRNG_NAME,
    Graph,
    connected_codes,
    degree_sequence,
    erdos_renyi,
    from_code,
    is_connected,
)
from .nilpotent import alpha_by_nilpotency, min_nilpotency_index, nilpotency_index, upper_from_graph
from .oracle import alpha_exact, is_vertex_cover
from .splitmodel import (
    SplitPartition,
    alpha_by_degree_sequence,
    construct_split_graph,
    count_passing_alphas,
    model_degree_sequence,
)

BEST_ORDERING_MAX_N = 7


@dataclass
class DiscrepancyRecord:
    graph_id: str
    n: int
    m: int
    alpha_true: int
    alpha_degseq: Optional[int]
    passing_alphas: list[int]
    alpha_nilpotent_identity: int
    alpha_nilpotent_best: Optional[int]
    prop1_ok: bool
    prop2_unique: bool
    prop7_identity_ok: bool
    prop7_best_ok: Optional[bool]
    internal_errors: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@lru_cache(maxsize=1 << 16)
def _passing_cached(s: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(count_passing_alphas(s))


def check_split_construction(g: Graph, witness: Sequence[int]) -> bool:
    """Build the split graph from a maximum independent set and verify every promised property."""
    alpha = len(witness)
    h = construct_split_graph(g, witness)
    ind = frozenset(witness)
    part = SplitPartition(ind, frozenset(range(g.n)) - ind)
    return (
        h.n == g.n
        and all(h.rows[v] & r == r for v, r in enumerate(g.rows))
        and part.holds_in(h)
        and alpha_exact(h).alpha == alpha
        and degree_sequence(h) == model_degree_sequence(alpha, g.n)
    )


def evaluate_graph(g: Graph, best_max_n: int = BEST_ORDERING_MAX_N) -> DiscrepancyRecord:
    n = g.n
    errors = []
    aw = alpha_exact(g)
    if not g.is_independent(aw.witness) or len(aw.witness) != aw.alpha:
        errors.append("oracle witness is not an independent set of size alpha")
    if not is_vertex_cover(g, set(range(n)) - set(aw.witness)):
        errors.append("oracle witness complement is not a vertex cover")

    s = tuple(degree_sequence(g))
    passing = list(_passing_cached(s))
    est_deg = alpha_by_degree_sequence(s)
    if est_deg != (passing[0] if passing else None):
        errors.append("degree-sequence estimate is not the first passing alpha")

    est_nil = alpha_by_nilpotency(g)
    if est_nil != n - nilpotency_index(upper_from_graph(g)):
        errors.append("nilpotency loop disagrees with longest-path index")

    est_best = n - min_nilpotency_index(g)[0] if n <= best_max_n else None
    if est_best is not None and est_best < est_nil:
        errors.append("best ordering is worse than the identity ordering")

    for name, est in (("degseq", est_deg), ("nilpotent", est_nil), ("best", est_best)):
        if est is not None and not 1 <= est <= n:
            errors.append(f"{name} estimate {est} outside 1..{n}")

    return DiscrepancyRecord(
        graph_id=emit_graph6(g),
        n=n,
        m=g.m,
        alpha_true=aw.alpha,
        alpha_degseq=est_deg,
        passing_alphas=passing,
        alpha_nilpotent_identity=est_nil,
        alpha_nilpotent_best=est_best,
        prop1_ok=check_split_construction(g, aw.witness),
        prop2_unique=len(passing) == 1,
        prop7_identity_ok=est_nil == aw.alpha,
        prop7_best_ok=None if est_best is None else est_best == aw.alpha,
        internal_errors=errors,
    )


# -- corpora -------------------------------------------------------------------------

def parse_n_range(text: str) -> tuple[int, int]:
    """``"a..b"`` or a single ``"a"``."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"bad n range {text!r}; expected a..b") from None
    if lo < 1 or hi < lo:
        raise InputError(f"bad n range {text!r}")
    return lo, hi


@dataclass(frozen=True)
class Corpus:
    source: str
    n_lo: int
    n_hi: int
    p: tuple[float, ...] = ()
    seed: Optional[int] = None
    count: int = 0

    def __post_init__(self):
        if self.source == "exhaustive":
            if self.n_hi > ENUMERATION_CAP:
                raise InputError(f"exhaustive sweeps are capped at n={ENUMERATION_CAP}")
        elif self.source == "random":
            if self.seed is None:
                raise InputError("random sweeps need --seed")
            if not self.p or any(not 0 <= p <= 1 for p in self.p):
                raise InputError("random sweeps need --p values in [0, 1]")
            if self.count < 1:
                raise InputError("random sweeps need --count >= 1")
        else:
            raise InputError(f"unknown source {self.source!r}")

    def describe(self) -> dict:
        d = {"source": self.source, "n": [self.n_lo, self.n_hi]}
        if self.source == "random":
            d.update(p=list(self.p), seed=self.seed, count=self.count, prng=PRNG_NAME)
        return d

    def tasks(self) -> Iterator[tuple]:
        if self.source == "exhaustive":
            for n in range(self.n_lo, self.n_hi + 1):
                for code in connected_codes(n).tolist():
                    yield ("code", n, code)
        else:
            master = random.Random(self.seed)
            for n in range(self.n_lo, self.n_hi + 1):
                for p in self.p:
                    for _ in range(self.count):
                        yield ("er", n, p, master.getrandbits(64))


def _graph_for(task: tuple) -> Optional[Graph]:
    if task[0] == "code":
        return from_code(task[1], task[2])
    g = erdos_renyi(task[1], task[2], task[3])
    return g if is_connected(g) else None


def _run_task(args) -> Optional[DiscrepancyRecord]:
    task, best_max_n = args
    g = _graph_for(task)
    return None if g is None else evaluate_graph(g, best_max_n)


def run_corpus(corpus: Corpus, workers: int = 1, best_max_n: int = BEST_ORDERING_MAX_N) -> Iterator[Optional[DiscrepancyRecord]]:
    """Records in corpus order; ``None`` marks a sampled graph skipped as disconnected."""
    jobs = ((t, best_max_n) for t in corpus.tasks())
    if workers <= 1:
        yield from map(_run_task, jobs)
        return
    with Pool(workers) as pool:
        yield from pool.imap(_run_task, jobs, chunksize=256)


# -- aggregation ---------------------------------------------------------------------

_FINDINGS = {
    "split_construction_failed": lambda r: not r.prop1_ok,
    "passing_not_unique": lambda r: not r.prop2_unique,
    "true_alpha_not_passing": lambda r: r.alpha_true not in r.passing_alphas,
    "degseq_wrong": lambda r: r.alpha_degseq != r.alpha_true,
    "identity_ordering_wrong": lambda r: not r.prop7_identity_ok,
    "best_ordering_wrong": lambda r: r.prop7_best_ok is False,
}


class SummaryBuilder:
    def __init__(self):
        self.groups: dict[int, dict] = {}
        self.skipped_disconnected = 0
        self.internal_failures = 0
        self.first_internal_failure = None

    def _group(self, n: int) -> dict:
        if n not in self.groups:
            self.groups[n] = {
                "total": 0,
                "degseq_match": 0,
                "degseq_not_found": 0,
                "nilpotent_identity_match": 0,
                "nilpotent_best_total": 0,
                "nilpotent_best_match": 0,
                "unique_passing": 0,
                "unique_passing_and_degseq_match": 0,
                "counterexamples": {k: 0 for k in _FINDINGS},
                "first_counterexample": {k: None for k in _FINDINGS},
            }
        return self.groups[n]

    def add(self, r: Optional[DiscrepancyRecord]) -> None:
        if r is None:
            self.skipped_disconnected += 1
            return
        g = self._group(r.n)
        g["total"] += 1
        g["degseq_match"] += r.alpha_degseq == r.alpha_true
        g["degseq_not_found"] += r.alpha_degseq is None
        g["nilpotent_identity_match"] += r.prop7_identity_ok
        if r.prop7_best_ok is not None:
            g["nilpotent_best_total"] += 1
            g["nilpotent_best_match"] += r.prop7_best_ok
        if r.prop2_unique:
            g["unique_passing"] += 1
            g["unique_passing_and_degseq_match"] += r.alpha_degseq == r.alpha_true
        for key, hit in _FINDINGS.items():
            if hit(r):
                g["counterexamples"][key] += 1
                if g["first_counterexample"][key] is None:
                    g["first_counterexample"][key] = r.graph_id
        if r.internal_errors:
            self.internal_failures += 1
            if self.first_internal_failure is None:
                self.first_internal_failure = {"graph_id": r.graph_id, "errors": r.internal_errors}

    def build(self, corpus: Corpus) -> dict:
        per_n = {}
        for n in sorted(self.groups):
            g = dict(self.groups[n])
            t = g["total"]
            g["rate_degseq"] = g["degseq_match"] / t
            g["rate_nilpotent_identity"] = g["nilpotent_identity_match"] / t
            bt = g["nilpotent_best_total"]
            g["rate_nilpotent_best"] = g["nilpotent_best_match"] / bt if bt else None
            per_n[str(n)] = g
        return {
            "corpus": corpus.describe(),
            "records": sum(g["total"] for g in self.groups.values()),
            "skipped_disconnected": self.skipped_disconnected,
            "findings_by_n": per_n,
            "internal": {
                "failures": self.internal_failures,
                "first_failure": self.first_internal_failure,
            },
        }


def summarize(records: Iterable[Optional[DiscrepancyRecord]], corpus: Corpus) -> dict:
    b = SummaryBuilder()
    for r in records:
        b.add(r)
    return b.build(corpus)


CSV_FIELDS = [f.name for f in fields(DiscrepancyRecord)]


def _csv_row(r: DiscrepancyRecord) -> list:
    row = []
    for name in CSV_FIELDS:
        v = getattr(r, name)
        if isinstance(v, list):
            v = ";".join(map(str, v))
        elif v is None:
            v = ""
        row.append(v)
    return row


def sweep(corpus: Corpus, out_path, csv_path=None, workers: int = 1, best_max_n: int = BEST_ORDERING_MAX_N) -> dict:
    """Write one JSON line per connected graph to ``out_path`` and return the summary."""
    builder = SummaryBuilder()
    with open(out_path, "w", encoding="utf-8", newline="\n") as out:
        writer = None
        csv_file = None
        if csv_path is not None:
            csv_file = open(csv_path, "w", encoding="utf-8", newline="")
            writer = csv.writer(csv_file, lineterminator="\n")
            writer.writerow(CSV_FIELDS)
        try:
            for r in run_corpus(corpus, workers, best_max_n):
                builder.add(r)
                if r is not None:
                    out.write(r.to_json() + "\n")
                    if writer is not None:
                        writer.writerow(_csv_row(r))
        finally:
            if csv_file is not None:
                csv_file.close()
    return builder.build(corpus)


def read_records(path) -> list[DiscrepancyRecord]:
    with open(path, encoding="utf-8") as f:
        return [DiscrepancyRecord(**json.loads(line)) for line in f if line.strip()]
