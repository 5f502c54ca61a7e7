"""Kernel tests: worked examples, oracle cross-checks, conservation, registry."""

import math

import pytest

from wlkit import ColourRegistry, Graph, ccwl, iwl, two_lwl, two_wl, wl
from wlkit.errors import NodeBudgetExceeded, WlkitError
from wlkit.kernels import _refine_rounds

import numpy as np

from helpers import (
    complete_graph,
    cycle_graph,
    disjoint_union,
    permute_graph,
    random_graph,
    random_ilg,
    seeded_rng,
)
from oracles import (
    ccwl_oracle,
    count_profile,
    iwl_oracle,
    two_lwl_oracle,
    two_wl_oracle,
    wl_oracle,
)

C6 = cycle_graph(6)
TWO_C3 = disjoint_union(cycle_graph(3), cycle_graph(3))


def fresh_registry(num_base=3):
    return ColourRegistry(num_base)


# --- WL ---


def test_wl_single_node_l0():
    counts = wl(Graph([1]), 0, fresh_registry())
    assert counts == {1: 1}


def test_wl_two_isolated_nodes_l2():
    counts = wl(Graph([1, 1]), 2, fresh_registry())
    # three colours (initial, once and twice refined), each on both nodes
    assert sorted(counts.values()) == [2, 2, 2]
    assert len(counts) == 3


def test_wl_iterations_zero_is_initial_colouring():
    g = random_graph(seeded_rng(1), 8)
    counts = wl(g, 0, fresh_registry())
    assert sum(counts.values()) == 8
    assert set(counts) == set(g.categorical)


def test_wl_cannot_split_c6_from_two_triangles():
    # frozen verdict from the brute-force reference
    for level in range(6):
        assert wl_oracle(C6, level) == wl_oracle(TWO_C3, level)
    reg = fresh_registry(1)
    for level in range(6):
        assert wl(C6, level, reg) == wl(TWO_C3, level, reg)


def test_wl_matches_oracle_count_profile():
    rng = seeded_rng(2)
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 10))
        level = rng.randint(0, 3)
        assert count_profile(wl(g, level, fresh_registry())) == count_profile(
            wl_oracle(g, level)
        )


def test_wl_rejects_bad_categorical_ids():
    with pytest.raises(WlkitError):
        wl(Graph([7]), 0, fresh_registry(3))


# --- 2-WL ---


def test_two_wl_single_node_l0():
    counts = two_wl(Graph([1]), 0, fresh_registry())
    assert sum(counts.values()) == 1
    assert len(counts) == 1


def test_two_wl_edgeless_pair_colours():
    # two differently coloured nodes: diagonal and both off-diagonal pairs
    # are distinct; every pair carries the no-edge label slot
    counts = two_wl(Graph([0, 1]), 0, fresh_registry())
    assert sum(counts.values()) == 4
    assert len(counts) == 4


def test_two_wl_splits_c6_from_two_triangles():
    # the reference distinguishes the pair from one iteration onwards
    assert two_wl_oracle(C6, 0) == two_wl_oracle(TWO_C3, 0)
    assert two_wl_oracle(C6, 1) != two_wl_oracle(TWO_C3, 1)
    reg = fresh_registry(1)
    assert two_wl(C6, 0, reg) == two_wl(TWO_C3, 0, reg)
    for level in (1, 2, 3):
        assert two_wl(C6, level, reg) != two_wl(TWO_C3, level, reg)


def test_two_wl_matches_oracle_count_profile():
    rng = seeded_rng(3)
    for _ in range(10):
        g = random_graph(rng, rng.randint(1, 7))
        level = rng.randint(0, 2)
        assert count_profile(two_wl(g, level, fresh_registry())) == count_profile(
            two_wl_oracle(g, level)
        )


def test_two_wl_pair_budget():
    with pytest.raises(NodeBudgetExceeded):
        two_wl(Graph([0] * 40), 1, fresh_registry(), pair_budget=100)


# --- 2-LWL ---


def test_two_lwl_edgeless_two_nodes():
    counts = two_lwl(Graph([1, 1]), 1, fresh_registry())
    # one pair through two rounds: the (1,1,none) lineage
    assert sum(counts.values()) == 2
    assert len(counts) == 2


def test_two_lwl_triangle_symmetry():
    counts = two_lwl(cycle_graph(3), 1, fresh_registry(1))
    # all three pairs share one initial and one refined colour
    assert sorted(counts.values()) == [3, 3]


def test_two_lwl_splits_k4_from_c4():
    k4, c4 = complete_graph(4), cycle_graph(4)
    assert two_lwl_oracle(k4, 1) != two_lwl_oracle(c4, 1)
    reg = fresh_registry(1)
    assert two_lwl(k4, 1, reg) != two_lwl(c4, 1, reg)
    assert two_lwl(k4, 2, reg) != two_lwl(c4, 2, reg)


def test_two_lwl_matches_oracle_count_profile():
    rng = seeded_rng(4)
    for _ in range(12):
        g = random_graph(rng, rng.randint(2, 9))
        level = rng.randint(0, 2)
        assert count_profile(two_lwl(g, level, fresh_registry())) == count_profile(
            two_lwl_oracle(g, level)
        )


def test_two_lwl_pair_budget():
    with pytest.raises(NodeBudgetExceeded):
        two_lwl(Graph([0] * 60), 1, fresh_registry(), pair_budget=100)


# --- iWL ---


def test_iwl_single_node_l0():
    reg = fresh_registry(3)
    counts = iwl(Graph([1]), 0, reg)
    assert counts == {reg.individualised: 1}


def test_iwl_two_isolated_nodes_l0():
    reg = fresh_registry(3)
    counts = iwl(Graph([1, 1]), 0, reg)
    assert counts == {reg.individualised: 2, 1: 2}


def test_iwl_splits_c6_from_two_triangles():
    # the reference pins the minimal distinguishing level at 2, and the
    # difference persists for every deeper run
    assert iwl_oracle(C6, 1) == iwl_oracle(TWO_C3, 1)
    assert iwl_oracle(C6, 2) != iwl_oracle(TWO_C3, 2)
    reg = fresh_registry(1)
    assert iwl(C6, 1, reg) == iwl(TWO_C3, 1, reg)
    for level in (2, 3, 4, 5):
        assert iwl(C6, level, reg) != iwl(TWO_C3, level, reg)


def test_iwl_matches_oracle_count_profile():
    rng = seeded_rng(5)
    for _ in range(10):
        g = random_graph(rng, rng.randint(1, 8))
        level = rng.randint(0, 2)
        assert count_profile(iwl(g, level, fresh_registry())) == count_profile(
            iwl_oracle(g, level)
        )


# --- ccWL ---


def test_ccwl_reduces_to_wl_with_zero_features():
    rng = seeded_rng(6)
    for _ in range(8):
        g = random_graph(rng, rng.randint(1, 9))
        zeroed = Graph(g.categorical, None, g.edges())
        reg_a, reg_b = fresh_registry(), fresh_registry()
        counts, fclr = ccwl(zeroed, 2, reg_a, "sum")
        assert counts == wl(zeroed, 2, reg_b)
        assert set(fclr) == set(counts)
        assert all(v == 0.0 for v in fclr.values())


def test_ccwl_single_node():
    counts, fclr = ccwl(Graph([1], [2.5]), 1, fresh_registry(), "sum")
    assert sorted(counts.values()) == [1, 1]
    assert sorted(fclr.values()) == [2.5, 2.5]


def test_ccwl_sums_equal_colour_classes():
    # two identically coloured nodes with value v aggregate to 2v at round 0
    g = Graph([2, 2], [4.0, 4.0])
    counts, fclr = ccwl(g, 0, fresh_registry(), "sum")
    assert fclr == {2: 8.0}


def test_ccwl_aggregators():
    g = Graph([1, 1], [1.0, 3.0])
    _, by_sum = ccwl(g, 0, fresh_registry(), "sum")
    _, by_mean = ccwl(g, 0, fresh_registry(), "mean")
    _, by_max = ccwl(g, 0, fresh_registry(), "max")
    assert by_sum[1] == 4.0
    assert by_mean[1] == 2.0
    assert by_max[1] == 3.0


def test_ccwl_matches_oracle():
    rng = seeded_rng(7)
    for aggregator in ("sum", "mean", "max"):
        for _ in range(6):
            g = random_graph(rng, rng.randint(1, 8))
            level = rng.randint(0, 3)
            counts, fclr = ccwl(g, level, fresh_registry(), aggregator)
            ocounts, ofclr = ccwl_oracle(g, level, aggregator)
            profile = sorted((counts[c], round(fclr[c], 9)) for c in counts)
            oprofile = sorted((ocounts[c], round(ofclr[c], 9)) for c in ocounts)
            assert profile == oprofile


def test_ccwl_rejects_unknown_aggregator():
    with pytest.raises(WlkitError):
        ccwl(Graph([0]), 0, fresh_registry(), "median")


# --- shared properties ---


def _all_outputs(g, level, reg):
    return {
        "wl": wl(g, level, reg),
        "2wl": two_wl(g, level, reg),
        "2lwl": two_lwl(g, level, reg),
        "iwl": iwl(g, level, reg),
        "ccwl": ccwl(g, level, reg, "sum")[0],
    }


def test_conservation_laws():
    rng = seeded_rng(8)
    for _ in range(15):
        g = random_ilg(rng, max_nodes=25)
        level = rng.randint(0, 3)
        reg = ColourRegistry(100)
        outputs = _all_outputs(g, level, reg)
        n = g.node_count
        assert sum(outputs["wl"].values()) == (level + 1) * n
        assert sum(outputs["ccwl"].values()) == (level + 1) * n
        assert sum(outputs["2wl"].values()) == (level + 1) * n * n
        assert sum(outputs["iwl"].values()) == (level + 1) * n * n
        assert sum(outputs["2lwl"].values()) == (level + 1) * math.comb(n, 2)


def test_permutation_invariance_sample():
    rng = seeded_rng(9)
    for _ in range(5):
        g = random_ilg(rng, max_nodes=18)
        reg = ColourRegistry(100)
        base = _all_outputs(g, 1, reg)
        for _ in range(10):
            perm = list(range(g.node_count))
            rng.shuffle(perm)
            assert _all_outputs(permute_graph(g, perm), 1, reg) == base


def test_hierarchy_spot_checks():
    # any pair split by WL is split by 2-LWL and 2-WL on a curated pair set
    rng = seeded_rng(10)
    pairs = [(C6, TWO_C3), (complete_graph(4), cycle_graph(4))]
    for _ in range(10):
        pairs.append((random_graph(rng, 6, 2, 1), random_graph(rng, 6, 2, 1)))
    for a, b in pairs:
        reg = fresh_registry(4)
        if wl(a, 2, reg) != wl(b, 2, reg):
            assert two_lwl(a, 2, reg) != two_lwl(b, 2, reg)
            assert two_wl(a, 2, reg) != two_wl(b, 2, reg)


def test_equality_verdicts_match_oracle():
    # the production kernels call two graphs equal exactly when the oracles do
    rng = seeded_rng(15)
    pairs = [
        (wl, wl_oracle),
        (two_wl, two_wl_oracle),
        (two_lwl, two_lwl_oracle),
        (iwl, iwl_oracle),
    ]
    for _ in range(12):
        g1 = random_graph(rng, 6, 2, 2, 0.4)
        g2 = random_graph(rng, 6, 2, 2, 0.4)
        level = rng.randint(0, 2)
        reg = fresh_registry()
        for main, oracle in pairs:
            main_equal = main(g1, level, reg) == main(g2, level, reg)
            assert main_equal == (oracle(g1, level) == oracle(g2, level))


def test_pair_kernel_chunking_is_transparent(monkeypatch):
    # forcing tiny scratch chunks must not change outputs or id assignment
    import wlkit.kernels as kernels_module

    g = random_graph(seeded_rng(14), 12)
    reg_a = fresh_registry()
    whole_2wl = two_wl(g, 2, reg_a)
    whole_2lwl = two_lwl(g, 2, reg_a)
    monkeypatch.setattr(kernels_module, "_SCRATCH_CELLS", 64)
    reg_b = fresh_registry()
    assert two_wl(g, 2, reg_b) == whole_2wl
    assert two_lwl(g, 2, reg_b) == whole_2lwl
    assert reg_a.entries() == reg_b.entries()


def test_refinement_keys_embed_previous_colours():
    # equal colours after a round imply equal colours before it
    rng = seeded_rng(11)
    for _ in range(10):
        g = random_graph(rng, rng.randint(2, 10))
        init = np.array([g.categorical], dtype=np.int64)
        rounds = list(_refine_rounds(init, g, 3, fresh_registry()))
        for before, after in zip(rounds, rounds[1:]):
            for v in range(g.node_count):
                for u in range(v + 1, g.node_count):
                    if after[0][v] == after[0][u]:
                        assert before[0][v] == before[0][u]


# --- registry semantics ---


def test_registry_replay_is_identical():
    rng = seeded_rng(12)
    graphs = [random_graph(rng, rng.randint(2, 8)) for _ in range(5)]
    reg_a, reg_b = fresh_registry(), fresh_registry()
    for g in graphs:
        wl(g, 2, reg_a)
        wl(g, 2, reg_b)
    assert reg_a.entries() == reg_b.entries()


def test_registry_injective():
    reg = fresh_registry()
    g = random_graph(seeded_rng(13), 9)
    wl(g, 3, reg)
    two_wl(g, 2, reg)
    ids = [colour for _, colour in reg.entries()]
    assert len(set(ids)) == len(ids)
    assert min(ids) == reg.num_base_colours + 2


def test_frozen_registry_returns_unseen_and_never_mutates():
    reg = fresh_registry()
    g1 = cycle_graph(4, colour=0)
    wl(g1, 2, reg)
    size = len(reg)
    frozen = reg.frozen()
    g2 = cycle_graph(5, colour=1)
    counts = wl(g2, 2, frozen)
    assert len(reg) == size
    assert counts[frozen.unseen] > 0
    known_key, known_id = reg.entries()[0]
    assert frozen.lookup(known_key) == known_id
    assert frozen.lookup(("wl", b"\xff" * 8)) == frozen.unseen


def test_known_keys_resolve_identically_when_frozen():
    reg = fresh_registry()
    g = cycle_graph(4)
    collected = wl(g, 2, reg)
    assert wl(g, 2, reg.frozen()) == collected
