from __future__ import annotations

import math
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from hfspeed.canon import (
    apply_perm_to_mask, canonical_form, canonical_graph, group_order,
    subset_orbit_reps, vertex_invariant, vertex_orbit,
)
from hfspeed.graphs import (
    Graph, bits, complete, complete_bipartite, cycle, edgeless, path,
    relabel, star,
)
from oracles import all_labeled_graphs, brute_aut_order, brute_isomorphic
from test_graphs import graphs_strategy

UNLABELED_COUNTS = [1, 1, 2, 4, 11, 34]  # graphs on 0..5 vertices


class TestCanonicalForm:
    def test_classes_match_brute_force_iso(self):
        # bucketing all labeled graphs by canonical form must (a) produce
        # the known number of classes and (b) agree with permutation-scan
        # isomorphism inside every bucket
        for n in range(6):
            buckets = {}
            for g in all_labeled_graphs(n):
                buckets.setdefault(canonical_graph(g), []).append(g)
            assert len(buckets) == UNLABELED_COUNTS[n]
            for rep, members in buckets.items():
                assert brute_isomorphic(rep, members[0])
                for m in members[1:3]:
                    assert brute_isomorphic(members[0], m)

    def test_orbit_counting_identity(self):
        # sum over classes of n!/|Aut| recovers the number of labeled graphs
        for n in range(6):
            seen = {}
            for g in all_labeled_graphs(n):
                cf = canonical_form(g)
                seen[cf.canon] = cf.aut_order
            total = sum(math.factorial(n) // a for a in seen.values())
            assert total == 1 << (n * (n - 1) // 2)

    def test_aut_order_matches_brute_force(self):
        for n in range(6):
            reps = {canonical_graph(g) for g in all_labeled_graphs(n)}
            for g in reps:
                assert canonical_form(g).aut_order == brute_aut_order(g)

    @pytest.mark.parametrize("g,order", [
        (cycle(5), 10),
        (cycle(6), 12),
        (path(4), 2),
        (edgeless(6), 720),
        (complete(6), 720),
        (complete_bipartite(3, 3), 72),
        (star(4), 24),
        (Graph(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 7), (7, 9),
                    (9, 6), (6, 8), (8, 5), (0, 5), (1, 6), (2, 7), (3, 8),
                    (4, 9)]), 120),  # Petersen
    ])
    def test_known_groups(self, g, order):
        assert canonical_form(g).aut_order == order

    @given(graphs_strategy(8), st.randoms(use_true_random=False))
    @settings(max_examples=60)
    def test_relabeling_invariance(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        assert canonical_graph(relabel(g, perm)) == canonical_graph(g)

    @given(graphs_strategy(8))
    @settings(max_examples=60)
    def test_generators_are_automorphisms(self, g):
        cf = canonical_form(g)
        for p in cf.generators:
            assert relabel(g, p) == g
        # and the canonical labeling really produces the canonical graph
        assert relabel(g, cf.labeling) == cf.canon

    def test_highest_position_has_max_invariant(self):
        # the enumerator's cheap rejection rule depends on this
        for g in all_labeled_graphs(5):
            cf = canonical_form(g)
            inv = vertex_invariant(g)
            w = cf.labeling.index(g.n - 1) if g.n else None
            if w is not None:
                assert inv[w] == max(inv)


class TestColoredCanon:
    def test_cells_are_respected(self):
        # P3 with the centre distinguished vs undistinguished endpoints
        p3 = path(3)
        cf = canonical_form(p3, cells=[0b010, 0b101])
        assert cf.aut_order == 2
        cf = canonical_form(p3, cells=[0b001, 0b110])  # endpoint singled out
        assert cf.aut_order == 1

    def test_colored_equivalence(self):
        # K2: both vertices same color vs different colors
        k2 = complete(2)
        same = canonical_form(k2, cells=[0b11])
        assert same.aut_order == 2
        diff = canonical_form(k2, cells=[0b01, 0b10])
        assert diff.aut_order == 1

    def test_color_classes_of_same_sizes_compare(self):
        # two 2-colorings of C4: opposite vertices same color vs adjacent
        c4 = cycle(4)
        opp = canonical_form(c4, cells=[0b0101, 0b1010])
        adj = canonical_form(c4, cells=[0b0011, 0b1100])
        assert opp.canon != adj.canon or opp.aut_order != adj.aut_order

    def test_bad_cells(self):
        with pytest.raises(ValueError):
            canonical_form(path(3), cells=[0b001])


class TestGroupOrder:
    def test_trivial(self):
        assert group_order([], 5) == 1
        assert group_order([tuple(range(5))], 5) == 1

    def test_small_groups(self):
        assert group_order([(1, 0, 2)], 3) == 2
        assert group_order([(1, 2, 0)], 3) == 3
        assert group_order([(1, 0, 2), (0, 2, 1)], 3) == 6
        # symmetric group via two standard generators, n = 8
        cyc = tuple(list(range(1, 8)) + [0])
        swap = (1, 0) + tuple(range(2, 8))
        assert group_order([cyc, swap], 8) == math.factorial(8)

    def test_against_brute_force_on_graph_groups(self):
        for g in all_labeled_graphs(4):
            gens = canonical_form(g).generators
            assert group_order(gens, 4) == brute_aut_order(g)


class TestOrbits:
    def test_vertex_orbit(self):
        gens = canonical_form(star(3)).generators
        assert vertex_orbit(1, gens, 4) == 0b1110
        assert vertex_orbit(0, gens, 4) == 0b0001

    def test_apply_perm_to_mask(self):
        assert apply_perm_to_mask(0b011, (2, 0, 1)) == 0b101

    def test_subset_orbit_reps_full_symmetry(self):
        gens = canonical_form(edgeless(3)).generators
        reps = subset_orbit_reps(3, gens)
        assert reps == [0b000, 0b001, 0b011, 0b111]

    def test_subset_orbit_reps_trivial_group(self):
        assert subset_orbit_reps(3, ()) == list(range(8))

    def test_subset_orbit_reps_partition(self):
        # reps plus their orbits tile the powerset exactly
        g = cycle(4)
        gens = canonical_form(g).generators
        reps = subset_orbit_reps(4, gens)
        seen = set()
        for r in reps:
            orbit = {r}
            frontier = [r]
            while frontier:
                x = frontier.pop()
                for p in gens:
                    y = apply_perm_to_mask(x, p)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            assert not (orbit & seen)
            assert min(orbit) == r
            seen |= orbit
        assert len(seen) == 16
