import random

import networkx as nx
import pytest

from sbsim.corpus import mutate_graph, random_pseudotree
from sbsim.graph import Graph
from sbsim.instances import gadget_transform, make_cycle_instance, make_pseudotree, make_yes_instance
from sbsim.oracles import (
    ABORT,
    ACCEPT,
    Configuration,
    MalformedConfiguration,
    NoLeaf,
    bfs_leaf_parity,
    block_views,
    decide_thue_morse,
    decode_good_graph,
    good_graph_check,
    rewrite_blocks,
    rewrite_phase,
    run_phases,
)
from sbsim.words import compress, padded_thue_morse, valid_word


def test_decide():
    assert decide_thue_morse(make_yes_instance(2)) == "yes"
    assert decide_thue_morse(make_cycle_instance("_0__0_")) == "no"


def test_rewrite_phase_examples():
    assert rewrite_phase(Configuration(valid_word(2))) == Configuration("_0000000_1111111_1111111_0000000_")
    assert rewrite_phase(Configuration("_0_1_1_0_1_0_0_1_1_0_1_0_0_1_")) == ABORT
    cyc = Configuration("_0000000_1111111_1111111_0000000", circular=True)
    assert rewrite_phase(cyc) == ABORT
    assert rewrite_phase(Configuration("_0_1_1_0_")) == ACCEPT


def test_malformed():
    for bad in [Configuration("01"), Configuration(""), Configuration("000", True), Configuration("0_1", True)]:
        with pytest.raises(MalformedConfiguration):
            rewrite_phase(bad)


def test_block_views_are_compressed_windows():
    rng = random.Random(3)
    for _ in range(100):
        letters = [rng.choice("01") for _ in range(rng.randint(1, 30))]
        word = "_" + "".join(x * rng.randint(1, 3) + "_" * rng.randint(1, 2) for x in letters)
        for view, q in block_views(Configuration(word)):
            assert compress(view) == view
            left, right = view[: q - 1], view[q:]
            assert left.count("_") <= 8 and right.count("_") <= 8
            assert left.startswith("|") or left.count("_") == 8
            assert right.endswith("|") or right.count("_") == 8


@pytest.mark.parametrize("i", range(1, 6))
def test_block_rewriting_agrees(i):
    cfg = Configuration(valid_word(i))
    phases = run_phases(cfg)
    direct = []
    while cfg not in (ACCEPT, ABORT):
        cfg = rewrite_blocks(cfg)
        direct.append(cfg)
    assert phases == direct
    assert phases[-1] == ACCEPT and len(phases) == i


def test_block_length_recurrence():
    cfg, block = Configuration(valid_word(4)), 1
    for j in range(3):
        cfg = rewrite_phase(cfg)
        block = 4 * block + 3
        assert cfg.symbols == padded_thue_morse(4 ** (4 - j - 1), block)
        assert block == 2 * 4 ** (j + 1) - 1


def test_rewriting_agrees_on_morphic_images():
    rng = random.Random(11)
    for _ in range(200):
        letters = "".join(rng.choice("01") for _ in range(rng.randint(1, 40)))
        word = "_" + "".join(x + "_" for x in letters)
        try:
            direct = rewrite_blocks(Configuration(word))
        except MalformedConfiguration:
            continue
        if direct != ACCEPT:
            assert rewrite_phase(Configuration(word)) == direct


def test_bfs_parity():
    assert bfs_leaf_parity(Graph.path(3)) == {0: 0, 1: 1, 2: 0}
    g = gadget_transform(make_pseudotree(7, "balanced-tree"))
    assert bfs_leaf_parity(g)[0] == 0
    with pytest.raises(NoLeaf):
        bfs_leaf_parity(Graph.cycle(5))


def test_bfs_matches_networkx():
    rng = random.Random(2)
    for _ in range(10):
        g = gadget_transform(random_pseudotree(rng, 200))
        ref = nx.Graph(g.edges())
        leaves = [v for v in ref if ref.degree(v) == 1]
        dist = nx.multi_source_dijkstra_path_length(ref, leaves)
        assert bfs_leaf_parity(g) == {v: d % 2 for v, d in dist.items()}


def test_good_graph_examples():
    dg = make_pseudotree(7, "balanced-tree")
    g = gadget_transform(dg)
    assert good_graph_check(g)
    decoded, originals = decode_good_graph(g)
    assert decoded == dg and originals == list(range(7))
    assert not good_graph_check(Graph.cycle(10))
    assert not good_graph_check(Graph.path(2))


def test_good_graph_under_relabelling():
    rng = random.Random(4)
    for _ in range(10):
        dg = random_pseudotree(rng, 60)
        g = gadget_transform(dg)
        perm = list(range(g.node_count))
        rng.shuffle(perm)
        shuffled = Graph.from_edges(g.node_count, [(perm[u], perm[v]) for u, v in g.edges()])
        assert good_graph_check(shuffled)
        decoded, _ = decode_good_graph(shuffled)
        assert nx.is_isomorphic(nx.DiGraph(decoded.arcs), nx.DiGraph(dg.arcs))


def test_non_pseudotree_gadgets_rejected():
    from sbsim.graph import DirectedGraph

    # a directed path: the middle node has indegree 1
    path = DirectedGraph(3, ((0, 1), (1, 2)))
    assert not good_graph_check(gadget_transform(path))


def test_single_edge_mutations_rejected():
    rng = random.Random(8)
    checked = 0
    for _ in range(60):
        g = gadget_transform(random_pseudotree(rng, 40))
        mutated = mutate_graph(g, rng)
        if mutated is None:
            continue
        checked += 1
        assert not good_graph_check(mutated)
    assert checked > 40
