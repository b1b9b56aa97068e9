import pytest

from splitrel import (
    FamilyParameterError,
    FamilySpec,
    TerminalPair,
    canonical_key,
    closed_form_split,
    construct,
    expected_ncounts,
    parse_spec,
    split_rel_factoring,
    split_rel_oracle,
)
from splitrel.graphs import from_weighted
from splitrel.reliability import EngineCache


def engine_counts(spec, cache=None):
    g, tp = construct(spec)
    poly = split_rel_factoring(g, tp, cache=cache)
    from splitrel import to_nvector

    nv = to_nvector(poly, g.n, g.m)
    return g, {g.n - 2 + i: c for i, c in enumerate(nv.counts)}


class TestParsing:
    def test_full_form(self):
        assert parse_spec("family:Gnm:4,4") == FamilySpec("Gnm", (4, 4))

    def test_short_form(self):
        assert parse_spec("X55") == FamilySpec("X55")

    def test_aliases(self):
        assert parse_spec("family:RnSimple:6") == FamilySpec("Rn", (6,))
        assert parse_spec("SnSimple:7") == FamilySpec("Sn", (7,))

    def test_rejects_unknown(self):
        with pytest.raises(FamilyParameterError, match="unknown family"):
            parse_spec("family:Nope:3")

    def test_rejects_bad_arity(self):
        with pytest.raises(FamilyParameterError, match="parameters"):
            parse_spec("family:Gnm:4")

    def test_round_trip_str(self):
        spec = parse_spec("family:D3:5,2,1")
        assert parse_spec(str(spec)) == spec


class TestConstructions:
    def test_candidate_multigraph_shape(self):
        g, tp = construct(FamilySpec("Gnm", (4, 4)))
        assert (g.n, g.m) == (4, 4)
        assert g.edges == (((0, 1), 2), ((1, 2), 1), ((2, 3), 1))
        assert tp == TerminalPair(0, 3)

    def test_candidate_degenerates_to_path_and_bundle(self):
        path_like, _ = construct(FamilySpec("Gnm", (5, 4)))
        assert all(w == 1 for _, w in path_like.edges)
        bundle_like, _ = construct(FamilySpec("Gnm", (2, 6)))
        assert bundle_like.edges == (((0, 1), 6),)

    def test_five_vertex_counterexample_pins(self):
        _, counts = engine_counts(FamilySpec("X55"))
        assert counts[3] == 8

    def test_six_vertex_counterexample_pins(self):
        _, counts = engine_counts(FamilySpec("Y66"))
        assert counts[4] == 12

    def test_six_vertex_counterexample_is_ring_family_member(self):
        ga, ta = construct(FamilySpec("Y66"))
        gb, tb = construct(FamilySpec("Rn", (6,)))
        assert canonical_key(ga, ta) == canonical_key(gb, tb)

    def test_parameter_errors_name_the_range(self):
        with pytest.raises(FamilyParameterError, match="m >= n-1"):
            construct(FamilySpec("Gnm", (5, 3)))
        with pytest.raises(FamilyParameterError, match="1 <= a <= m-1"):
            construct(FamilySpec("B3", (4, 4)))
        with pytest.raises(FamilyParameterError, match="m-a-b"):
            construct(FamilySpec("D3", (3, 2, 1)))
        with pytest.raises(FamilyParameterError, match="n >= 5"):
            construct(FamilySpec("PathTriangle", (4,)))

    def test_simple_family_members_are_simple(self):
        for text in ("family:Sn:7", "family:Rn:7", "family:X55", "family:Y66",
                     "family:PathTriangle:6"):
            g, _ = construct(parse_spec(text))
            assert g.is_simple()
            assert g.n == g.m


class TestClosedForms:
    def test_engine_agreement_sweep(self):
        cache = EngineCache()
        specs = []
        for n in range(2, 7):
            for k in range(1, n):
                specs.append(FamilySpec("Path", (n, k)))
        for n in range(3, 7):
            for k in range(1, n):
                specs.append(FamilySpec("Cycle", (n, k)))
        for m in range(1, 6):
            specs.append(FamilySpec("Bundle", (m,)))
        for n in range(2, 6):
            for m in range(n - 1, 9):
                specs.append(FamilySpec("Gnm", (n, m)))
        for m in range(2, 7):
            for a in range(1, m):
                specs.append(FamilySpec("B3", (m, a)))
                specs.append(FamilySpec("C3", (m, a)))
        for m in range(3, 7):
            for a in range(1, m - 1):
                for b in range(1, m - a):
                    specs.append(FamilySpec("D3", (m, a, b)))
        for spec in specs:
            g, tp = construct(spec)
            assert closed_form_split(spec) == split_rel_factoring(g, tp, cache=cache), spec

    def test_no_closed_form(self):
        with pytest.raises(FamilyParameterError, match="closed form"):
            closed_form_split(FamilySpec("X55"))


class TestStatedCounts:
    def test_candidate_counts(self):
        for n in range(3, 7):
            for m in range(n, 10):
                spec = FamilySpec("Gnm", (n, m))
                _, counts = engine_counts(spec)
                want = expected_ncounts(spec)
                for i, v in want.items():
                    assert counts[i] == v, (spec, i)

    def test_pendant_bundle_counts(self):
        for n in range(4, 7):
            for m in range(n - 1, 10):
                spec = FamilySpec("HPendantBundle", (n, m))
                _, counts = engine_counts(spec)
                for i, v in expected_ncounts(spec).items():
                    assert counts[i] == v, (spec, i)

    def test_two_bundle_counts(self):
        for n in range(4, 7):
            for m in range(n, 10):
                spec = FamilySpec("HTwoBundles", (n, m))
                _, counts = engine_counts(spec)
                for i, v in expected_ncounts(spec).items():
                    assert counts[i] == v, (spec, i)

    def test_two_bundle_count_beats_candidate_above_cycle_density(self):
        for n in range(4, 8):
            for m in range(n + 1, 11):
                hi = expected_ncounts(FamilySpec("HTwoBundles", (n, m)))[n - 2]
                lo = expected_ncounts(FamilySpec("Gnm", (n, m)))[n - 2]
                assert hi - lo == (m - n) * (n - 3)
                if n >= 4:
                    assert hi > lo

    def test_ring_counts(self):
        for n in range(5, 9):
            spec = FamilySpec("Rn", (n,))
            _, counts = engine_counts(spec)
            for i, v in expected_ncounts(spec).items():
                assert counts[i] == v, (spec, i)

    def test_near_path_counts(self):
        for n in range(6, 9):
            spec = FamilySpec("Sn", (n,))
            _, counts = engine_counts(spec)
            for i, v in expected_ncounts(spec).items():
                assert counts[i] == v, (spec, i)

    def test_ring_beats_near_path_at_the_bottom(self):
        for n in range(6, 9):
            ring = expected_ncounts(FamilySpec("Rn", (n,)))[n - 2]
            near_path = expected_ncounts(FamilySpec("Sn", (n,)))[n - 2]
            assert ring > near_path

    def test_path_triangle_counts(self):
        for n in range(5, 9):
            spec = FamilySpec("PathTriangle", (n,))
            _, counts = engine_counts(spec)
            assert counts[n - 2] == 3 * (n - 3)


class TestBundlePlacement:
    def test_mirror_placements_are_isomorphic(self):
        # bundle on the first path edge vs the last: isomorphic with the
        # terminals swapped, so the keys agree
        n, m = 5, 8

        def placed(position):
            triples = [
                (i, i + 1, m - n + 2 if i == position else 1) for i in range(n - 1)
            ]
            return from_weighted(n, triples)

        reference, tp = construct(FamilySpec("Gnm", (n, m)))
        assert canonical_key(reference, tp) == canonical_key(placed(0), (0, n - 1))
        for position in range(n - 1):
            mirrored = n - 2 - position
            assert canonical_key(placed(position), (0, n - 1)) == canonical_key(
                placed(mirrored), (0, n - 1)
            )
        # an interior placement is a genuinely different labeled class
        assert canonical_key(placed(0), (0, n - 1)) != canonical_key(
            placed(1), (0, n - 1)
        )

    def test_all_placements_share_the_polynomial(self):
        n, m = 5, 7
        reference, tp = construct(FamilySpec("Gnm", (n, m)))
        want = split_rel_factoring(reference, tp)
        for position in range(1, n - 1):
            triples = [
                (i, i + 1, m - n + 2 if i == position else 1) for i in range(n - 1)
            ]
            moved = from_weighted(n, triples)
            assert split_rel_factoring(moved, TerminalPair(0, n - 1)) == want
