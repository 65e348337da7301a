import itertools
import random

import pytest

from gridchroma.chi import is_proper
from gridchroma.errors import InputError
from gridchroma.graphs import FiniteGraph, is_connected_set, is_independent, set_distance
from gridchroma.groups import MarkedGroupSpec
from gridchroma.instances import (
    CYCLE,
    SEGMENT,
    cayley_cycle_instance,
    cayley_segment_instance,
    ladder_instance,
    path_instance,
)
from gridchroma.twoended import (
    SeparatorFamily,
    build_separator_family,
    check_complement_bounded,
    color_two_ended,
    connected_subsets,
    family_metrics,
    find_separators,
)

DELTA3 = MarkedGroupSpec(3)
GAMMA3 = MarkedGroupSpec(3, twisted=True)


def random_graph(n, p, seed):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return FiniteGraph(n, edges)


class TestConnectedSubsets:
    @pytest.mark.parametrize("seed", range(6))
    def test_matches_brute_force(self, seed):
        g = random_graph(9, 0.3, seed)
        cap = 4
        got = set(connected_subsets(g, range(9), cap))
        want = {
            frozenset(s)
            for size in range(1, cap + 1)
            for s in itertools.combinations(range(9), size)
            if is_connected_set(g, s)
        }
        assert got == want

    def test_respects_allowed_set(self):
        g = FiniteGraph(4, [(0, 1), (1, 2), (2, 3)])
        got = set(connected_subsets(g, [1, 2], 2))
        assert got == {frozenset({1}), frozenset({2}), frozenset({1, 2})}

    def test_no_duplicates(self):
        g = random_graph(10, 0.5, seed=3)
        subs = connected_subsets(g, range(10), 3)
        assert len(subs) == len(set(subs))


class TestFindSeparators:
    def test_path_segment_interior_singletons(self):
        inst = path_instance(9, SEGMENT)
        got = find_separators(inst, 1, 1)
        assert got == [frozenset({v}) for v in range(1, 8)]

    def test_cayley_cycle_full_orbits_only(self):
        inst = cayley_cycle_instance(DELTA3, 12)
        got = find_separators(inst, 1, 9)
        assert got == [frozenset(b) for b in inst.blocks]

    def test_ladder_rung_pairs(self):
        inst = ladder_instance(12, CYCLE)
        got = find_separators(inst, 1, 2)
        assert got == [frozenset(b) for b in inst.blocks]

    def test_two_block_window_on_path(self):
        inst = path_instance(8, SEGMENT)
        got = find_separators(inst, 2, 2)
        assert frozenset({3, 4}) in got
        assert all(is_connected_set(inst.graph, s) for s in got)


class TestBuildFamily:
    def test_path_greedy_every_fourth(self):
        inst = path_instance(13, SEGMENT)
        fam = build_separator_family(inst, find_separators(inst, 1, 1))
        assert [sorted(s) for s in fam.members] == [[1], [5], [9]]

    def test_pairwise_distance_at_least_four(self):
        inst = cayley_cycle_instance(DELTA3, 12, chi=3)
        fam = build_separator_family(inst, find_separators(inst, 1, 9))
        for a, b in itertools.combinations(fam.members, 2):
            assert set_distance(inst.graph, a, b) >= 4

    def test_cayley_cycle_selects_blocks_0_4_8(self):
        inst = cayley_cycle_instance(DELTA3, 12, chi=3)
        fam = build_separator_family(inst, find_separators(inst, 1, 9))
        assert [min(inst.block_of(v) for v in s) for s in fam.members] == [0, 4, 8]
        metrics = family_metrics(inst, fam)
        assert metrics["degrees"] == [2, 2, 2]
        assert metrics["shape_ok"]
        assert metrics["each_divides"]

    def test_two_member_cycle_family_has_parallel_passages(self):
        inst = cayley_cycle_instance(DELTA3, 9, chi=3)
        fam = build_separator_family(inst, find_separators(inst, 1, 9))
        assert len(fam.members) == 2
        assert len(fam.passage_edges) == 2
        assert fam.degree(0) == fam.degree(1) == 2

    def test_segment_family_is_a_path(self):
        inst = path_instance(13, SEGMENT)
        fam = build_separator_family(inst, find_separators(inst, 1, 1))
        metrics = family_metrics(inst, fam)
        assert metrics["shape_ok"]
        assert metrics["degrees"] == [1, 2, 1]

    def test_no_candidates_is_an_error(self):
        inst = ladder_instance(8, CYCLE)
        with pytest.raises(InputError, match="increase window or cap"):
            build_separator_family(inst, find_separators(inst, 1, 1))


class TestComplementBound:
    def test_path_gap_arithmetic(self):
        inst = path_instance(13, SEGMENT)
        fam = build_separator_family(inst, find_separators(inst, 1, 1))
        report = check_complement_bounded(inst, fam)
        assert report["satisfied"]
        assert report["max_component_size"] == 3
        assert report["largest_gap"] == 4

    def test_cayley_components_confined(self):
        inst = cayley_cycle_instance(DELTA3, 12, chi=3)
        fam = build_separator_family(inst, find_separators(inst, 1, 9))
        report = check_complement_bounded(inst, fam)
        assert report["satisfied"]
        assert report["max_component_blocks"] == 3

    def test_degenerate_single_member_cycle_family_flagged(self):
        inst = path_instance(12, CYCLE)
        fam = SeparatorFamily((frozenset({0}),), ())
        report = check_complement_bounded(inst, fam)
        assert not report["satisfied"]
        assert "maximality" in report["flag"]


class TestColorTwoEnded:
    @pytest.mark.parametrize(
        "make,bound",
        [
            (lambda: path_instance(12, CYCLE), 3),
            (lambda: ladder_instance(12, CYCLE), 3),
            (lambda: cayley_cycle_instance(DELTA3, 12, chi=3), 5),
            (lambda: cayley_cycle_instance(GAMMA3, 12, chi=3), 5),
        ],
    )
    def test_suite_instances_proper_within_bound(self, make, bound):
        inst = make()
        result = color_two_ended(inst)
        assert is_proper(inst.graph, result.coloring)
        assert result.colors_used <= bound
        assert result.coloring.palette == bound
        assert result.complement_stats["satisfied"]

    def test_segment_instances(self):
        for inst, bound in [
            (path_instance(13, SEGMENT), 3),
            (cayley_segment_instance(DELTA3, 9, chi=3), 5),
        ]:
            result = color_two_ended(inst)
            assert is_proper(inst.graph, result.coloring)
            assert result.colors_used <= bound

    def test_dropped_class_is_independent(self):
        inst = cayley_cycle_instance(DELTA3, 12, chi=3)
        result = color_two_ended(inst)
        dropped = result.buffer_region - result.trimmed_buffer
        assert is_independent(inst.graph, dropped)

    def test_trimmed_buffer_uses_low_colors_only(self):
        inst = cayley_cycle_instance(DELTA3, 12, chi=3)
        result = color_two_ended(inst)
        for v in result.trimmed_buffer:
            assert result.coloring.colors[v] < result.chi
        for v in set(range(inst.graph.n)) - result.trimmed_buffer:
            assert result.coloring.colors[v] >= result.chi

    def test_deterministic(self):
        a = color_two_ended(cayley_cycle_instance(DELTA3, 12, chi=3))
        b = color_two_ended(cayley_cycle_instance(DELTA3, 12, chi=3))
        assert a.coloring == b.coloring
        assert a.family.members == b.family.members

    def test_computes_chi_when_absent(self):
        inst = cayley_cycle_instance(DELTA3, 12)
        assert inst.chi is None
        result = color_two_ended(inst)
        assert result.chi == 3

    def test_understated_chi_rejected(self):
        inst = cayley_cycle_instance(DELTA3, 12)
        with pytest.raises(InputError, match="too small"):
            color_two_ended(inst, chi=2)

    def test_even_path_cycle_uses_exactly_chromatic_plus_structure(self):
        result = color_two_ended(path_instance(12, CYCLE))
        assert result.colors_used <= 3

    def test_twisted_odd_quotient_with_declared_chi_five(self):
        # the odd twisted quotient is 5-chromatic; running the separator
        # pipeline with that value lands within 2*5 - 1 = 9 colors
        inst = cayley_cycle_instance(GAMMA3, 9, chi=5)
        result = color_two_ended(inst)
        assert is_proper(inst.graph, result.coloring)
        assert result.colors_used <= 9
        assert len(result.family.members) == 2
        assert result.complement_stats["satisfied"]
