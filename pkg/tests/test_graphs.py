import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitrel import (
    EdgeAbsentError,
    GraphBuildError,
    Multigraph,
    TerminalError,
    TerminalPair,
    automorphisms,
    build,
    canonical_key,
    components,
    contract_edge,
    delete_edge,
    from_weighted,
    is_connected,
    min_st_cut,
    shortest_path_length,
)
from splitrel.graphs import isomorphic_brute_force, pair_orbits

from conftest import random_connected_multigraph, random_graph_in
from oracles import min_perm_encoding


def bundle(m: int) -> Multigraph:
    return from_weighted(2, [(0, 1, m)])


def path(n: int) -> Multigraph:
    return build(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Multigraph:
    return build(n, [(i, (i + 1) % n) for i in range(n)])


class TestBuild:
    def test_parallel_edges_merge(self):
        g = build(2, [(0, 1), (0, 1), (0, 1)])
        assert g.m == 3
        assert g.edges == (((0, 1), 3),)

    def test_known_four_vertex_graph(self, g1):
        assert (g1.n, g1.m) == (4, 5)
        assert g1.pairs() == ((0, 1), (0, 2), (0, 3), (1, 2), (2, 3))

    def test_loop_rejected(self):
        with pytest.raises(GraphBuildError, match=r"\(0, 0\)"):
            build(3, [(0, 0)])

    def test_endpoint_out_of_range(self):
        with pytest.raises(GraphBuildError):
            build(2, [(0, 2)])

    def test_unnormalized_direct_construction_rejected(self):
        with pytest.raises(GraphBuildError):
            Multigraph(3, (((1, 0), 1),), 1)
        with pytest.raises(GraphBuildError):
            Multigraph(3, (((0, 1), 1),), 2)


class TestConnectivity:
    def test_path_connected(self):
        assert is_connected(path(4))

    def test_sparse_disconnected(self):
        assert not is_connected(build(3, [(0, 1)]))

    def test_two_deletions_isolate_a_vertex(self, g1):
        g = delete_edge(delete_edge(g1, (0, 3)), (3, 2))
        assert not is_connected(g)
        assert (3,) in components(g)

    def test_components_no_edges(self):
        assert components(build(2, [])) == [(0,), (1,)]

    def test_components_partial(self, g1):
        g = build(4, [(0, 1), (1, 2)])
        assert components(g) == [(0, 1, 2), (3,)]

    def test_components_connected_single_block(self, g1):
        assert components(g1) == [(0, 1, 2, 3)]

    def test_single_vertex_connected(self):
        assert is_connected(build(1, []))


class TestDeleteContract:
    def test_delete_from_bundle(self):
        assert delete_edge(bundle(3), (0, 1)) == bundle(2)

    def test_delete_chord_gives_cycle(self, g1):
        g = delete_edge(g1, (0, 2))
        assert canonical_key(g) == canonical_key(cycle(4))

    def test_delete_absent_pair(self):
        g = delete_edge(path(3), (0, 1))
        with pytest.raises(EdgeAbsentError):
            delete_edge(g, (0, 1))

    def test_contract_bundle_collapses(self):
        g = contract_edge(bundle(3), (0, 1))
        assert (g.n, g.m) == (1, 0)

    def test_contract_cycle(self):
        assert canonical_key(contract_edge(cycle(4), (1, 2))) == canonical_key(cycle(3))

    def test_contract_chord_merges_opposite_corners(self, g1):
        # merging the chord endpoints leaves the two other vertices each
        # joined twice to the merged vertex
        g = contract_edge(g1, (0, 2))
        assert (g.n, g.m) == (3, 4)
        assert g.edges == (((0, 1), 2), ((0, 2), 2))

    def test_contract_decrements_counts(self):
        rng = random.Random(7)
        for _ in range(40):
            g = random_graph_in(rng, 6, 9)
            pair = rng.choice(g.pairs())
            h = contract_edge(g, pair)
            assert h.n == g.n - 1
            assert h.m == g.m - g.multiplicity(pair)

    def test_delete_then_readd_restores_key(self):
        rng = random.Random(11)
        for _ in range(40):
            g = random_graph_in(rng, 6, 9)
            pair = rng.choice(g.pairs())
            h = delete_edge(g, pair)
            restored = build(g.n, h.slots() + [pair])
            assert canonical_key(restored) == canonical_key(g)


class TestCuts:
    def test_known_cut_values(self, g1):
        assert min_st_cut(g1, TerminalPair(3, 1)) == 2
        assert min_st_cut(g1, TerminalPair(0, 2)) == 3

    def test_path_cut_is_one(self):
        assert min_st_cut(path(5), TerminalPair(0, 4)) == 1

    def test_bundle_cut_is_m(self):
        assert min_st_cut(bundle(4), TerminalPair(0, 1)) == 4

    def test_cut_bounded_by_terminal_degrees(self):
        rng = random.Random(13)
        for _ in range(40):
            g = random_graph_in(rng, 6, 10)
            s, t = 0, g.n - 1
            cut = min_st_cut(g, TerminalPair(s, t))
            assert 1 <= cut <= min(g.degree(s), g.degree(t))

    def test_disconnected_terminals_rejected(self):
        g = build(3, [(0, 1)])
        with pytest.raises(TerminalError):
            min_st_cut(g, TerminalPair(0, 2))


class TestShortestPath:
    def test_path_ends(self):
        assert shortest_path_length(path(4), TerminalPair(0, 3)) == 3

    def test_cycle_antipodal(self):
        assert shortest_path_length(cycle(6), TerminalPair(0, 3)) == 3

    def test_known_graph(self, g1):
        assert shortest_path_length(g1, TerminalPair(3, 1)) == 2

    def test_disconnected(self):
        with pytest.raises(TerminalError):
            shortest_path_length(build(3, [(0, 1)]), TerminalPair(0, 2))


class TestCanonicalKey:
    def test_path_reversal(self):
        p = path(4)
        assert canonical_key(p, (0, 3)) == canonical_key(p, (3, 0))

    def test_cycle_terminal_distance_distinguishes(self):
        c = cycle(4)
        assert canonical_key(c, (0, 1)) != canonical_key(c, (0, 2))

    def test_bundle_placement_irrelevant(self):
        first = from_weighted(4, [(0, 1, 3), (1, 2, 1), (2, 3, 1)])
        last = from_weighted(4, [(0, 1, 1), (1, 2, 1), (2, 3, 3)])
        assert canonical_key(first, (0, 3)) == canonical_key(last, (0, 3))

    def test_agrees_with_brute_force_on_random_pairs(self):
        rng = random.Random(17)
        for _ in range(60):
            n = rng.randint(2, 6)
            g = random_connected_multigraph(rng, n, rng.randint(n - 1, 8))
            h = random_connected_multigraph(rng, n, g.m)
            same_key = canonical_key(g) == canonical_key(h)
            assert same_key == isomorphic_brute_force(g, h)

    def test_agrees_with_brute_force_with_terminals(self):
        rng = random.Random(18)
        for _ in range(30):
            n = rng.randint(2, 5)
            g = random_connected_multigraph(rng, n, rng.randint(n - 1, 7))
            h = random_connected_multigraph(rng, n, g.m)
            gt = (0, n - 1)
            ht = (0, n - 1)
            same_key = canonical_key(g, gt) == canonical_key(h, ht)
            assert same_key == isomorphic_brute_force(g, h, gt, ht)

    def test_matches_min_perm_encoding_grouping(self):
        rng = random.Random(19)
        seen: dict[tuple, bytes] = {}
        for _ in range(80):
            g = random_graph_in(rng, 6, 8)
            enc = min_perm_encoding(g)
            key = canonical_key(g)
            if enc in seen:
                assert seen[enc] == key
            else:
                assert key not in seen.values()
                seen[enc] = key

    def test_relabeled_graph_same_key_with_terminals(self):
        rng = random.Random(23)
        for _ in range(40):
            n = rng.randint(3, 6)
            g = random_connected_multigraph(rng, n, rng.randint(n, 8))
            perm = list(range(n))
            rng.shuffle(perm)
            relabeled = from_weighted(
                n, [(perm[u], perm[v], w) for (u, v), w in g.edges]
            )
            s, t = 0, n - 1
            assert canonical_key(g, (s, t)) == canonical_key(
                relabeled, (perm[s], perm[t])
            )


class TestAutomorphisms:
    def test_small_groups(self):
        assert len(automorphisms(path(4))) == 2
        assert len(automorphisms(cycle(4))) == 8
        assert len(automorphisms(build(4, list(combinations(range(4), 2))))) == 24

    def test_diamond_group(self, g1):
        assert len(automorphisms(g1)) == 4

    def test_every_listed_permutation_preserves_graph(self):
        rng = random.Random(29)
        for _ in range(30):
            g = random_graph_in(rng, 6, 8)
            for perm in automorphisms(g):
                mapped = from_weighted(
                    g.n, [(perm[u], perm[v], w) for (u, v), w in g.edges]
                )
                assert mapped == g

    def test_pair_orbits_match_brute_force(self):
        from oracles import terminal_orbits_brute

        rng = random.Random(31)
        for _ in range(25):
            g = random_graph_in(rng, 5, 7)
            brute = terminal_orbits_brute(g)
            reps = pair_orbits(g)
            assert len(reps) == len(brute)
            assert {min(orbit) for orbit in brute} == set(reps)


class TestComponentsInvariant:
    def test_blocks_are_connected_and_edge_closed(self):
        # independent union-find check over spanning subgraphs of the
        # exhaustive small suite
        from splitrel.enumeration import multi_classes

        rng = random.Random(37)
        for n in range(2, 6):
            for m in range(n - 1, 8):
                for g in multi_classes(n, m):
                    slots = g.slots()
                    for _ in range(4):
                        kept = [e for e in slots if rng.random() < 0.6]
                        sub = build(g.n, kept)
                        blocks = components(sub)
                        assert sorted(v for b in blocks for v in b) == list(range(g.n))
                        parent = list(range(g.n))

                        def find(x):
                            while parent[x] != x:
                                parent[x] = parent[parent[x]]
                                x = parent[x]
                            return x

                        for u, v in kept:
                            parent[find(u)] = find(v)
                        block_of = {}
                        for idx, blk in enumerate(blocks):
                            for v in blk:
                                block_of[v] = idx
                        for u, v in kept:
                            assert block_of[u] == block_of[v]
                        for x in range(g.n):
                            for y in range(g.n):
                                same_root = find(x) == find(y)
                                assert same_root == (block_of[x] == block_of[y])


class TestTerminalPair:
    def test_distinct_required(self):
        with pytest.raises(TerminalError):
            TerminalPair(1, 1)

    def test_sorted_view(self):
        assert TerminalPair(3, 1).as_sorted() == (1, 3)


@given(
    st.integers(2, 6).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                min_size=1,
                max_size=10,
            ),
        )
    )
)
@settings(max_examples=150, deadline=None)
def test_build_normalizes_or_rejects(args):
    n, raw = args
    if any(u == v for u, v in raw):
        with pytest.raises(GraphBuildError):
            build(n, raw)
        return
    g = build(n, raw)
    assert g.m == len(raw)
    assert list(g.pairs()) == sorted(set(tuple(sorted(e)) for e in raw))
