import random

from sbsim.corpus import (
    FUZZ_FAMILIES,
    THUE_MORSE_FAMILIES,
    fuzz_corpus,
    locally_valid_word,
    morphic_image,
    random_connected_graph,
    random_pseudotree,
    thue_morse_corpus,
)
from sbsim.instances import is_consistent_sequence
from sbsim.oracles import decide_thue_morse, good_graph_check, passes_prologue
from sbsim.instances import gadget_transform
from sbsim.words import thue_morse_word_by_complement


def test_morphic_image():
    assert morphic_image("0", 2) == thue_morse_word_by_complement(4)
    assert morphic_image("1", 1) == "1001"


def test_locally_valid_words_pass_the_prologue():
    from sbsim.instances import make_path_instance

    rng = random.Random(1)
    for _ in range(50):
        word = locally_valid_word("".join(rng.choice("01") for _ in range(rng.randint(1, 20))))
        assert passes_prologue(make_path_instance(word))


def test_thue_morse_corpus_is_seeded():
    a = [(i, f, inst) for i, f, inst in thue_morse_corpus(70, 3, max_length=300)]
    b = [(i, f, inst) for i, f, inst in thue_morse_corpus(70, 3, max_length=300)]
    assert a == b
    assert {f for _, f, _ in a} == set(THUE_MORSE_FAMILIES)
    assert all(inst.n <= 300 for _, _, inst in a)
    yes = [inst for _, f, inst in a if f == "yes"]
    assert all(decide_thue_morse(inst) == "yes" for inst in yes)
    inconsistent = [inst for _, f, inst in a if f == "inconsistent"]
    assert not any(is_consistent_sequence(inst.orientation) for inst in inconsistent)


def test_fuzz_graphs_have_degree_at_most_three():
    graphs = list(fuzz_corpus(50, 1, max_nodes=80))
    assert {f for _, f, _ in graphs} == set(FUZZ_FAMILIES)
    assert all(g.max_degree() <= 3 for _, _, g in graphs if g.node_count > 1)


def test_random_graph_helpers():
    rng = random.Random(0)
    g = random_connected_graph(40, rng, extra_edges=10)
    assert g.max_degree() <= 3 and g.edge_count >= 39
    assert good_graph_check(gadget_transform(random_pseudotree(rng, 50)))
