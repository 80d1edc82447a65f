"""Seeded random instance families for verification, fuzzing and benchmarks."""

import random

from .graph import Graph, GraphError
from .instances import (
    ORIENTATIONS,
    Instance,
    cyclic_orientation,
    gadget_transform,
    make_pseudotree,
    random_inconsistent_orientation,
)
from .words import pad, valid_word, valid_word_length

_TM_IMAGE = {"0": "0110", "1": "1001"}

THUE_MORSE_FAMILIES = (
    "random-word",
    "inconsistent",
    "locally-valid",
    "mutated-yes",
    "morphic",
    "yes",
    "cycle",
)

FUZZ_FAMILIES = ("random-graph", "random-tree", "cycle", "near-miss-gadget", "gadget-mutation")


def random_letters(length, rng):
    return "".join(rng.choice("01") for _ in range(length))


def morphic_image(letters, steps):
    """Apply 0 -> 0110, 1 -> 1001 ``steps`` times."""
    for _ in range(steps):
        letters = "".join(_TM_IMAGE[x] for x in letters)
    return letters


def locally_valid_word(letters):
    """``_x1_x2_..._xp_`` with the first and last letter forced to 0."""
    letters = "0" + letters[1:-1] + "0" if len(letters) > 1 else "0"
    return pad(letters)


def mutate_word(word, rng, edits):
    chars = list(word)
    for _ in range(edits):
        kind = rng.random()
        j = rng.randrange(len(chars))
        if kind < 0.6 or len(chars) < 3:
            chars[j] = rng.choice([x for x in "01_" if x != chars[j]])
        elif kind < 0.8:
            del chars[j]
        else:
            chars.insert(j, rng.choice("01_"))
    return "".join(chars)


def _max_index(max_length, cap=4):
    i = 0
    while i < cap and valid_word_length(i + 1) <= max_length:
        i += 1
    return i


def _path(word, orients):
    return Instance(Graph.path(len(word)), tuple(orients), tuple(word))


def random_thue_morse_instance(rng, family, max_length=2000):
    """One instance of ``family``; all lengths stay within ``max_length``."""
    if family == "random-word":
        n = rng.randint(1, max_length)
        return _path("".join(rng.choice("01_") for _ in range(n)), cyclic_orientation(n))
    if family == "inconsistent":
        i = rng.randint(1, 4)
        word = valid_word(i)
        if rng.random() < 0.5:
            word = mutate_word(word, rng, 1)
        word = word[:max_length]
        n = max(len(word), 2)
        word = word.ljust(n, "_")
        return _path(word, random_inconsistent_orientation(n, rng))
    if family == "locally-valid":
        p = rng.randint(1, (max_length - 1) // 2)
        word = locally_valid_word(random_letters(p, rng))
        return _path(word, cyclic_orientation(len(word)))
    if family == "mutated-yes":
        word = valid_word(rng.randint(1, max(1, _max_index(max_length))))
        word = mutate_word(word, rng, rng.randint(1, 3))[:max_length] or "_"
        return _path(word, cyclic_orientation(len(word)))
    if family == "morphic":
        steps = rng.randint(1, max(1, _max_index(max_length)))
        base = max(1, (max_length - 1) // (2 * 4**steps))
        letters = morphic_image(random_letters(rng.randint(1, base), rng), steps)
        block = 1
        while len(letters) * (4 * block + 4) + 1 <= max_length and rng.random() < 0.3:
            block = 4 * block + 3
        word = pad(letters, block)[:max_length]
        start = rng.choice(ORIENTATIONS)
        return _path(word, cyclic_orientation(len(word), start))
    if family == "yes":
        word = valid_word(rng.randint(0, _max_index(max_length)))
        orients = cyclic_orientation(len(word), rng.choice(ORIENTATIONS))
        if rng.random() < 0.5:
            orients = orients[::-1]
        return _path(word, orients)
    if family == "cycle":
        while True:
            n = rng.randrange(3, max_length + 1, 3)
            if rng.random() < 0.5:
                letters = random_letters(max(1, n // 2), rng)
                word = "".join("_" + x for x in letters)[:n]
            else:
                word = "".join(rng.choice("01_") for _ in range(n))
            if len(word) == n:
                break
        return Instance(Graph.cycle(n), cyclic_orientation(n, rng.choice(ORIENTATIONS)), tuple(word))
    raise ValueError(f"unknown family {family!r}")


def thue_morse_corpus(count, seed, max_length=2000, families=THUE_MORSE_FAMILIES):
    """``count`` instances cycling through ``families``; yields ``(instance_id, family, instance)``."""
    rng = random.Random(seed)
    for j in range(count):
        family = families[j % len(families)]
        yield f"{family}-{seed}-{j}", family, random_thue_morse_instance(rng, family, max_length)


# -- pseudotrees and fuzz graphs -------------------------------------------


def random_pseudotree(rng, max_nodes=2047):
    """A random directed binary pseudotree with a random shape."""
    shape = rng.choice(("random-tree", "with-cycle"))
    if shape == "random-tree":
        n = rng.randrange(3, max_nodes + 1, 2)
    else:
        n = rng.randrange(6, max_nodes + 1, 2)
    return make_pseudotree(n, shape, seed=rng.randrange(2**31))


def random_connected_graph(n, rng, max_degree=3, extra_edges=0):
    """Random spanning tree of maximum degree ``max_degree`` plus up to ``extra_edges`` chords."""
    edges = set()
    degree = [0] * n
    for v in range(1, n):
        candidates = [u for u in range(v) if degree[u] < max_degree]
        u = rng.choice(candidates)
        edges.add((u, v))
        degree[u] += 1
        degree[v] += 1
    for _ in range(extra_edges * 4):
        if extra_edges <= 0:
            break
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or degree[u] >= max_degree or degree[v] >= max_degree:
            continue
        key = (min(u, v), max(u, v))
        if key in edges:
            continue
        edges.add(key)
        degree[u] += 1
        degree[v] += 1
        extra_edges -= 1
    return Graph.from_edges(n, sorted(edges))


def mutate_graph(g, rng, max_degree=3, attempts=100):
    """Add, remove or move a single edge, keeping the graph connected and of
    bounded degree. Returns ``None`` when no mutation was found."""
    edges = set(g.edges())
    n = g.node_count
    for _ in range(attempts):
        new = set(edges)
        kind = rng.choice(("add", "remove", "move"))
        if kind in ("remove", "move"):
            new.discard(rng.choice(sorted(edges)))
        if kind in ("add", "move"):
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v:
                continue
            new.add((min(u, v), max(u, v)))
        if new == edges:
            continue
        degree = [0] * n
        for u, v in new:
            degree[u] += 1
            degree[v] += 1
        if max(degree) > max_degree:
            continue
        try:
            return Graph.from_edges(n, sorted(new))
        except GraphError:
            continue
    return None


def random_inputs(n, rng):
    """Arbitrary ThueMorse local inputs, used to run that algorithm on any graph."""
    return [(rng.choice(ORIENTATIONS), rng.choice("01_")) for _ in range(n)]


def random_fuzz_graph(rng, family, max_nodes=200):
    if family == "random-graph":
        n = rng.randint(1, max_nodes)
        return random_connected_graph(n, rng, extra_edges=rng.randint(0, n // 4))
    if family == "random-tree":
        return random_connected_graph(rng.randint(1, max_nodes), rng)
    if family == "cycle":
        return Graph.cycle(rng.randint(3, max_nodes))
    good = gadget_transform(random_pseudotree(rng, max_nodes=max(7, max_nodes // 6)))
    if family == "gadget-mutation":
        return mutate_graph(good, rng) or good
    if family == "near-miss-gadget":
        # several independent mutations of a good graph
        g = good
        for _ in range(rng.randint(2, 5)):
            g = mutate_graph(g, rng) or g
        return g
    raise ValueError(f"unknown family {family!r}")


def fuzz_corpus(count, seed, max_nodes=200, families=FUZZ_FAMILIES):
    """Yields ``(graph_id, family, graph)``."""
    rng = random.Random(seed)
    for j in range(count):
        family = families[j % len(families)]
        yield f"{family}-{seed}-{j}", family, random_fuzz_graph(rng, family, max_nodes)
