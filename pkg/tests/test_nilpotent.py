import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphalab.errors import InputError
from alphalab.graphcore import (
    complete,
    connected_codes,
    cycle,
    empty,
    enumerate_connected,
    erdos_renyi,
    from_code,
    from_edge_list,
    pair_order,
    relabel,
)
from alphalab.nilpotent import (
    ModelMatrixSpec,
    StrictUpperMatrix,
    alpha_by_nilpotency,
    best_ordering_alpha,
    block_size,
    bool_power_is_zero,
    build_B,
    build_C,
    build_S,
    build_Sprime,
    build_T,
    min_index_all_orderings,
    min_nilpotency_index,
    nilpotency_index,
    nilpotency_index_by_powers,
    ordering_indices,
    upper_from_graph,
)
from strategies import adjacency_from_codes, graphs

TRIANGLE_PLUS_TWO = from_edge_list(5, [(0, 1), (0, 4), (1, 4)])


def one_indexed(u):
    return sorted((i + 1, j + 1) for i, j in u.ones())


def longest_path_networkx(g, ordering):
    """Edge length of the longest label-increasing path, via networkx on the oriented DAG."""
    dag = nx.DiGraph()
    dag.add_nodes_from(range(g.n))
    for u, v in g.edges():
        a, b = ordering[u], ordering[v]
        dag.add_edge(min(a, b), max(a, b))
    return nx.dag_longest_path_length(dag)


def int_power_zero_pattern(u, h):
    a = np.array(u.to_array(), dtype=object)
    p = a.copy()
    for _ in range(h - 1):
        p = p.dot(a)
    return p != 0


class TestStrictUpperMatrix:
    def test_rejects_lower_entries(self):
        with pytest.raises(InputError):
            StrictUpperMatrix(3, (0, 1, 0))
        with pytest.raises(InputError):
            StrictUpperMatrix(2, (1, 0))

    def test_array_roundtrip(self):
        u = build_S(3, 6)
        assert StrictUpperMatrix.from_array(u.to_array()) == u


class TestBuilders:
    def test_T2(self):
        assert one_indexed(build_T(2, 6)) == [(1, 2)]

    def test_T3(self):
        assert one_indexed(build_T(3, 7)) == [(1, 2), (1, 3), (2, 3)]

    @pytest.mark.parametrize("n", range(2, 10))
    def test_Tn_full(self, n):
        assert one_indexed(build_T(n, n)) == [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]

    def test_C(self):
        assert one_indexed(build_C(3, 5)) == [(1, 3), (2, 3)]

    def test_B(self):
        assert one_indexed(build_B(3, 5)) == [(1, 4), (1, 5), (2, 4), (2, 5)]
        assert build_B(5, 5).is_zero()

    def test_S_is_T_plus_B(self):
        for n in range(2, 9):
            for kp1 in range(2, n + 1):
                t, b, s = build_T(kp1, n), build_B(kp1, n), build_S(kp1, n)
                assert not set(t.ones()) & set(b.ones())
                assert set(s.ones()) == set(t.ones()) | set(b.ones())

    def test_Sprime_extremes(self):
        for n in range(2, 9):
            for kp1 in range(2, n + 1):
                size = block_size(kp1, n)
                assert build_Sprime(kp1, n, [1] * size) == build_S(kp1, n)
                assert build_Sprime(kp1, n, [0] * size) == build_T(kp1, n)

    def test_Sprime_bits_placement(self):
        u = build_Sprime(3, 5, [1, 0, 0, 1])
        assert one_indexed(u) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 5)]

    @pytest.mark.parametrize("kp1,n", [(1, 5), (6, 5), (0, 0)])
    def test_ranges(self, kp1, n):
        for build in (build_T, build_C, build_B, build_S):
            with pytest.raises(InputError):
                build(kp1, n)

    def test_bit_count(self):
        with pytest.raises(InputError):
            build_Sprime(3, 5, [1, 0])

    def test_spec_object(self):
        assert ModelMatrixSpec("S", 3, 6).build() == build_S(3, 6)
        assert ModelMatrixSpec("Sprime", 3, 5, (1, 0, 0, 1)).predicted_index() == 2
        with pytest.raises(InputError):
            ModelMatrixSpec("Q", 3, 6)
        with pytest.raises(InputError):
            ModelMatrixSpec("T", 3, 6, (1,))


class TestPowers:
    def test_T2_square(self):
        for n in range(2, 8):
            assert bool_power_is_zero(build_T(2, n), 2)

    def test_zero_matrix(self):
        assert bool_power_is_zero(StrictUpperMatrix.zero(4), 1)

    def test_h_must_be_positive(self):
        with pytest.raises(InputError):
            bool_power_is_zero(build_T(2, 3), 0)

    def test_C_and_B_square_to_zero(self):
        for n in range(3, 10):
            for kp1 in range(2, n + 1):
                assert bool_power_is_zero(build_C(kp1, n), 2)
                assert bool_power_is_zero(build_B(kp1, n), 2)

    def test_Sprime_suite(self):
        rng = random.Random(20)
        findings = []
        for n in range(2, 13):
            for kp1 in range(2, n + 1):
                size = block_size(kp1, n)
                patterns = [[0] * size] + [[rng.randint(0, 1) for _ in range(size)] for _ in range(20)]
                for bits in patterns:
                    u = build_Sprime(kp1, n, bits)
                    assert bool_power_is_zero(u, kp1)
                    findings += [(kp1, n, h) for h in range(1, kp1) if bool_power_is_zero(u, h)]
        assert findings == []

    @settings(max_examples=100)
    @given(graphs(max_n=8), st.integers(1, 8))
    def test_boolean_matches_integer_zero_pattern(self, g, h):
        u = upper_from_graph(g)
        assert bool_power_is_zero(u, h) == (not int_power_zero_pattern(u, h).any())


class TestNilpotencyIndex:
    def test_examples(self):
        assert nilpotency_index(StrictUpperMatrix.zero(5)) == 0
        assert nilpotency_index(upper_from_graph(complete(5))) == 4
        assert nilpotency_index(upper_from_graph(TRIANGLE_PLUS_TWO)) == 2

    @settings(max_examples=200)
    @given(graphs(max_n=9))
    def test_dp_matches_powers(self, g):
        u = upper_from_graph(g)
        assert nilpotency_index(u) == nilpotency_index_by_powers(u)

    def test_dp_matches_powers_exhaustive_small(self):
        rng = random.Random(1)
        for n in range(1, 7):
            for g in enumerate_connected(n):
                orderings = [list(range(n))]
                for _ in range(5):
                    perm = list(range(n))
                    rng.shuffle(perm)
                    orderings.append(perm)
                for o in orderings:
                    u = upper_from_graph(g, o)
                    assert nilpotency_index(u) == nilpotency_index_by_powers(u)

    def test_adjacency_from_codes(self):
        codes = connected_codes(4)
        expected = np.stack([from_code(4, c).adjacency_matrix() for c in codes.tolist()])
        assert np.array_equal(adjacency_from_codes(4, codes), expected)

    def test_dp_matches_powers_n7_batched(self):
        # numpy path on every connected 7-vertex graph: longest-path DP vs boolean powers
        rng = np.random.default_rng(7)
        codes = connected_codes(7)
        for start in range(0, codes.size, 200_000):
            chunk = codes[start:start + 200_000]
            adj = adjacency_from_codes(7, chunk)
            for rep in range(6):
                perms = np.tile(np.arange(7), (chunk.size, 1)) if rep == 0 else rng.permuted(np.tile(np.arange(7), (chunk.size, 1)), axis=1)
                inv = np.argsort(perms, axis=1)
                rows = np.arange(chunk.size)[:, None, None]
                permuted = adj[rows, inv[:, :, None], inv[:, None, :]]
                upper = np.triu(permuted, 1).astype(np.uint8)
                dp = ordering_indices(permuted, np.arange(7)[None])[:, 0]
                p, index = upper.copy(), np.zeros(chunk.size, dtype=int)
                while p.any():
                    alive = p.any(axis=(1, 2))
                    index += alive
                    p = (np.matmul(p, upper) > 0).astype(np.uint8)
                assert np.array_equal(dp, index)


class TestUpperFromGraph:
    def test_complete(self):
        assert upper_from_graph(complete(5)) == build_T(5, 5)

    def test_empty(self):
        assert upper_from_graph(empty(5), [4, 3, 2, 1, 0]).is_zero()

    def test_cycle(self):
        assert one_indexed(upper_from_graph(cycle(5))) == [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]

    @given(graphs(max_n=7), st.randoms(use_true_random=False))
    def test_matches_relabel(self, g, rnd):
        o = list(range(g.n))
        rnd.shuffle(o)
        h = relabel(g, o)
        u = upper_from_graph(g, o)
        assert all(u.entry(i, j) == h.has_edge(i, j) for i in range(g.n) for j in range(i + 1, g.n))


class TestAlphaByNilpotency:
    def test_examples(self):
        assert alpha_by_nilpotency(complete(5)) == 1
        assert alpha_by_nilpotency(TRIANGLE_PLUS_TWO) == 3
        assert alpha_by_nilpotency(empty(5)) == 5

    def test_cycle5_counterexample(self):
        assert longest_path_networkx(cycle(5), range(5)) == 4
        assert alpha_by_nilpotency(cycle(5)) == 1

    @settings(max_examples=200)
    @given(graphs(max_n=9), st.randoms(use_true_random=False))
    def test_range_and_empty(self, g, rnd):
        o = list(range(g.n))
        rnd.shuffle(o)
        a = alpha_by_nilpotency(g, o)
        assert 1 <= a <= g.n
        assert (a == g.n) == (g.m == 0)
        assert a == g.n - longest_path_networkx(g, o)

    def test_rejects_empty_vertex_set(self):
        with pytest.raises(InputError):
            alpha_by_nilpotency(empty(0))


class TestOrderingSearch:
    def test_complete_and_empty(self):
        for n in range(1, 7):
            assert best_ordering_alpha(complete(n)).alpha_est == 1
            assert best_ordering_alpha(empty(n)).alpha_est == n

    def test_cycle5(self):
        g = cycle(5)
        brute = min(longest_path_networkx(g, o) for o in itertools.permutations(range(5)))
        assert brute == 2
        res = best_ordering_alpha(g)
        assert res.alpha_est == 3 and res.exhaustive and res.orderings_searched == 120
        first = next(o for o in itertools.permutations(range(5)) if longest_path_networkx(g, o) == 2)
        assert res.witness == first
        assert alpha_by_nilpotency(g, res.witness) == 3

    def test_relabeling_changes_estimate(self):
        g = cycle(5)
        assert alpha_by_nilpotency(g) != alpha_by_nilpotency(g, best_ordering_alpha(g).witness)

    def test_sampled_mode(self):
        g = erdos_renyi(11, 0.4, 5)
        res = best_ordering_alpha(g, seed=3, samples=500)
        assert not res.exhaustive and res.orderings_searched == 501
        assert res.alpha_est == alpha_by_nilpotency(g, res.witness)
        assert res == best_ordering_alpha(g, seed=3, samples=500)

    def test_ordering_indices_match_single(self):
        gs = list(enumerate_connected(4))
        adj = np.stack([g.adjacency_matrix() for g in gs])
        perms = np.array(list(itertools.permutations(range(4))))
        table = ordering_indices(adj, perms)
        for gi, g in enumerate(gs):
            for pi, p in enumerate(perms):
                assert table[gi, pi] == nilpotency_index(upper_from_graph(g, p))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_fast_minimum_matches_exhaustive(self, n):
        gs = list(enumerate_connected(n))
        exhaustive = min_index_all_orderings(np.stack([g.adjacency_matrix() for g in gs]))
        for g, ex in zip(gs, exhaustive.tolist()):
            index, witness = min_nilpotency_index(g)
            assert index == ex
            assert nilpotency_index(upper_from_graph(g, witness)) == index

    def test_fast_minimum_matches_exhaustive_sampled(self):
        rng = random.Random(9)
        for n in (6, 7):
            codes = connected_codes(n).tolist()
            for code in rng.sample(codes, 150):
                g = from_code(n, code)
                assert min_nilpotency_index(g)[0] == n - best_ordering_alpha(g).alpha_est
