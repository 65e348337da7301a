import pytest

from gridchroma.chi import Budget, Coloring, find_coloring, is_proper
from gridchroma.errors import InputError
from gridchroma.grid import HORIZONTAL, VERTICAL, two_orbit_graph
from gridchroma.groups import GroupElement, MarkedGroupSpec, multiply, untwist
from gridchroma.quotients import (
    build_quotient,
    cayley_window,
    orientation_sequence,
    quotient_chi,
    verify_alternation_obstruction,
    verify_even_quotient_isomorphism,
)

DELTA3 = MarkedGroupSpec(3)
GAMMA3 = MarkedGroupSpec(3, twisted=True)


class TestConstruction:
    def test_delta_m3_size_and_regularity(self):
        q = build_quotient(DELTA3, 3)
        assert q.graph.n == 27
        assert q.graph.is_regular(12)

    def test_gamma_m3_size_and_regularity(self):
        q = build_quotient(GAMMA3, 3)
        assert q.graph.n == 27
        assert q.graph.is_regular(12)

    def test_small_modulus_rejected(self):
        with pytest.raises(InputError):
            build_quotient(DELTA3, 2)

    def test_window_of_two_levels_matches_two_orbit_graph(self):
        for twisted in (False, True):
            window = cayley_window(MarkedGroupSpec(3, twisted=twisted), 2)
            direct = two_orbit_graph(3, twisted).graph
            assert list(window.edges()) == list(direct.edges())

    def test_window_interior_degree(self):
        window = cayley_window(DELTA3, 5)
        # interior levels see all 3(k-1)^2 neighbors
        for v in range(window.n):
            _, _, n = window.labels[v]
            if 1 <= n <= 3:
                assert window.degree(v) == 12

    def test_right_multiplication_is_window_automorphism(self):
        # edges are y = s*x, so right multiplication by level-0 elements
        # permutes each level and preserves adjacency
        for spec in (DELTA3, GAMMA3):
            window = cayley_window(spec, 3)
            index = {lab: v for v, lab in enumerate(window.labels)}
            edges = set(window.edges())
            for c in range(3):
                for d in range(3):
                    gamma = GroupElement(c, d, 0)
                    image = {}
                    for v, (a, b, n) in enumerate(window.labels):
                        y = multiply(spec, GroupElement(a, b, n), gamma)
                        image[v] = index[(y.a, y.b, y.n)]
                    mapped = {
                        tuple(sorted((image[u], image[v]))) for u, v in edges
                    }
                    assert mapped == edges

    def test_left_multiplication_is_automorphism_for_plain_only(self):
        # in the plain group left and right multiplication agree; in the
        # twisted group left multiplication by a generic grid element is
        # not an automorphism of the left-multiplication Cayley graph
        window = cayley_window(DELTA3, 3)
        index = {lab: v for v, lab in enumerate(window.labels)}
        edges = set(window.edges())
        gamma = GroupElement(1, 2, 0)
        image = {
            v: index[
                (lambda y: (y.a, y.b, y.n))(
                    multiply(DELTA3, gamma, GroupElement(a, b, n))
                )
            ]
            for v, (a, b, n) in enumerate(window.labels)
        }
        assert {tuple(sorted((image[u], image[v]))) for u, v in edges} == edges

    def test_untwist_maps_twisted_window_onto_plain_window(self):
        tw = cayley_window(GAMMA3, 4)
        pl = cayley_window(DELTA3, 4)
        index = {lab: v for v, lab in enumerate(pl.labels)}
        image = {}
        for v, (a, b, n) in enumerate(tw.labels):
            e = untwist(GroupElement(a, b, n))
            image[v] = index[(e.a, e.b, e.n)]
        mapped = {tuple(sorted((image[u], image[v]))) for u, v in tw.edges()}
        assert mapped == set(pl.edges())


class TestQuotientChi:
    # values frozen from exact solver runs; the plain upper bounds also
    # follow from the first-coordinate coloring and the twisted odd lower
    # bounds from the alternation parity argument
    @pytest.mark.parametrize("modulus", [3, 4, 5, 12])
    def test_plain_quotients_stay_k_chromatic(self, modulus):
        assert quotient_chi(DELTA3, modulus).value == 3

    def test_twisted_odd_quotient_needs_2k_minus_1(self):
        assert quotient_chi(GAMMA3, 3).value == 5

    def test_twisted_m5_observed_value(self):
        assert quotient_chi(GAMMA3, 5).value == 5

    @pytest.mark.parametrize("modulus", [4, 12])
    def test_twisted_even_quotients_collapse(self, modulus):
        assert quotient_chi(GAMMA3, modulus).value == 3

    def test_separation_gap_at_m3(self):
        gap = quotient_chi(GAMMA3, 3).value - quotient_chi(DELTA3, 3).value
        assert gap == 2

    def test_undecided_on_tiny_budget(self):
        res = quotient_chi(GAMMA3, 3, budget=Budget(max_nodes=3))
        assert res.undecided


class TestOrientationSequence:
    def test_plain_projection_is_constant(self):
        q = build_quotient(DELTA3, 3)
        cols = tuple(a + 1 for (a, b, n) in q.graph.labels)
        seq = orientation_sequence(q, Coloring(cols, 4))
        assert seq == [VERTICAL] * 3

    def test_twisted_even_alternates(self):
        q = build_quotient(GAMMA3, 4)
        cols = tuple(
            (a if n % 2 == 0 else b) + 1 for (a, b, n) in q.graph.labels
        )
        coloring = Coloring(cols, 4)
        assert is_proper(q.graph, coloring)
        seq = orientation_sequence(q, coloring)
        assert seq == [VERTICAL, HORIZONTAL, VERTICAL, HORIZONTAL]

    def test_improper_coloring_rejected(self):
        q = build_quotient(DELTA3, 3)
        with pytest.raises(InputError):
            orientation_sequence(q, Coloring((1,) * 27, 4))

    def test_twisted_odd_has_no_4_coloring(self):
        q = build_quotient(GAMMA3, 3)
        assert find_coloring(q.graph, 4) is None


class TestAlternation:
    @pytest.mark.parametrize("modulus", [3, 5])
    def test_obstruction_verified(self, modulus):
        report = verify_alternation_obstruction(3, modulus)
        assert report.ok
        assert len(report.notes) == 2  # search route plus parity route

    def test_even_modulus_rejected(self):
        with pytest.raises(InputError):
            verify_alternation_obstruction(3, 4)

    def test_undecided_on_tiny_budget(self):
        report = verify_alternation_obstruction(3, 5, budget=Budget(max_nodes=3))
        assert report.undecided


class TestEvenIsomorphism:
    def test_m4_isomorphism(self):
        report = verify_even_quotient_isomorphism(3, 4)
        assert report.ok
        assert report.count == 216  # 36 vertices x 12 / 2

    def test_odd_modulus_rejected(self):
        with pytest.raises(InputError):
            verify_even_quotient_isomorphism(3, 3)

    def test_m3_quotients_differ_by_chromatic_number(self):
        # no swap-map isomorphism can exist at odd modulus: the chromatic
        # numbers already differ
        assert quotient_chi(DELTA3, 3).value != quotient_chi(GAMMA3, 3).value
