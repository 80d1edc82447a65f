"""Problem instances: oriented paths and cycles, binary pseudotrees, the gadget
encoding of directed graphs, and the plain-text instance and digraph formats."""

import random
from dataclasses import dataclass

from .graph import DirectedGraph, Graph, GraphError
from .words import valid_word

ORIENTATIONS = ("A", "B", "C")
_SUCC = {"A": "B", "B": "C", "C": "A"}
_PRED = {b: a for a, b in _SUCC.items()}
WORD_SYMBOLS = frozenset("01_")

INSTANCE_HEADER = "sbsim-instance v1"
DIGRAPH_HEADER = "sbsim-digraph v1"

SHAPES = ("balanced-tree", "random-tree", "with-cycle")

# gadget-internal roles, in the order of the five fresh nodes per arc
GADGET_ROLES = ("G1", "G2", "G3", "G4", "G5")


class LengthNotOrientable(ValueError):
    pass


class ShapeInfeasible(ValueError):
    pass


class DegreeViolation(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


def succ(o):
    return _SUCC[o]


def pred(o):
    return _PRED[o]


@dataclass(frozen=True)
class Instance:
    """A graph plus per-node local inputs.

    ``orientation`` and ``word`` are per-node tuples or ``None`` when the problem's
    input set has no such component (leaf parity uses neither).
    """

    graph: Graph
    orientation: tuple | None = None
    word: tuple | None = None

    def __post_init__(self):
        n = self.graph.node_count
        if self.orientation is not None:
            if len(self.orientation) != n or not set(self.orientation) <= set(ORIENTATIONS):
                raise ValueError("orientation must give one of A/B/C per node")
        if self.word is not None:
            if len(self.word) != n or not set(self.word) <= WORD_SYMBOLS:
                raise ValueError("word must give one of 0/1/_ per node")

    @property
    def n(self):
        return self.graph.node_count

    def local_inputs(self):
        """One local input per node: ``(orientation, symbol)`` or ``None`` for the unit input."""
        if self.orientation is None and self.word is None:
            return [None] * self.n
        orient = self.orientation or (None,) * self.n
        word = self.word or (None,) * self.n
        return list(zip(orient, word))


def cyclic_orientation(n, start="A"):
    out, o = [], start
    for _ in range(n):
        out.append(o)
        o = succ(o)
    return tuple(out)


def is_consistent_sequence(orients):
    """True iff successive symbols all step forward, or all step backward, in A<B<C<A."""
    pairs = list(zip(orients, orients[1:]))
    return all(b == succ(a) for a, b in pairs) or all(b == pred(a) for a, b in pairs)


def make_yes_instance(i):
    word = valid_word(i)
    return Instance(Graph.path(len(word)), cyclic_orientation(len(word)), tuple(word))


def random_inconsistent_orientation(n, rng, circular=False):
    if n < 2:
        raise ValueError("a single node cannot carry an inconsistent orientation")
    while True:
        orients = tuple(rng.choice(ORIENTATIONS) for _ in range(n))
        seq = orients + orients[:1] if circular else orients
        if not is_consistent_sequence(seq):
            return orients


def make_path_instance(word, consistent=True, seed=0):
    """Path instance spelling ``word`` left to right."""
    if not word or not set(word) <= WORD_SYMBOLS:
        raise ValueError("word must be a non-empty string over 0, 1, _")
    n = len(word)
    if consistent:
        orients = cyclic_orientation(n)
    else:
        orients = random_inconsistent_orientation(n, random.Random(seed))
    return Instance(Graph.path(n), orients, tuple(word))


def make_cycle_instance(word, seed=0, consistent=True):
    """Cycle instance; a consistent orientation exists only when ``len(word) % 3 == 0``."""
    if len(word) < 3 or not set(word) <= WORD_SYMBOLS:
        raise ValueError("cycle words need at least three symbols over 0, 1, _")
    n = len(word)
    if consistent:
        if n % 3:
            raise LengthNotOrientable(f"cycle length {n} is not divisible by 3")
        orients = cyclic_orientation(n)
    else:
        orients = random_inconsistent_orientation(n, random.Random(seed), circular=True)
    return Instance(Graph.cycle(n), orients, tuple(word))


def _random_full_binary_tree(size, rng, first_id, arcs):
    """Append arcs (child -> parent) of a random full binary tree; returns the root id."""
    next_id = first_id
    root = next_id
    next_id += 1
    stack = [(root, size)]
    while stack:
        node, count = stack.pop()
        if count == 1:
            continue
        left = rng.randrange(0, (count - 1) // 2) * 2 + 1
        for sub in (left, count - 1 - left):
            child = next_id
            next_id += 1
            arcs.append((child, node))
            stack.append((child, sub))
    return root


def make_pseudotree(original_nodes, shape, seed=0):
    """Directed binary pseudotree: outdegree <= 1, indegree in {0, 2}, arcs point away from leaves."""
    n = original_nodes
    rng = random.Random(seed)
    arcs = []
    if shape == "balanced-tree":
        if n < 3 or (n + 1) & n:
            raise ShapeInfeasible("a balanced tree needs 2^k - 1 nodes with k >= 2")
        arcs = [(v, (v - 1) // 2) for v in range(1, n)]
    elif shape == "random-tree":
        if n < 3 or n % 2 == 0:
            raise ShapeInfeasible("a full binary tree needs an odd number (>= 3) of nodes")
        _random_full_binary_tree(n, rng, 0, arcs)
    elif shape == "with-cycle":
        if n < 6 or n % 2:
            raise ShapeInfeasible("a binary pseudotree with a cycle needs an even number (>= 6) of nodes")
        c = rng.randint(3, n // 2)
        sizes = [1] * c
        for _ in range((n - 2 * c) // 2):
            sizes[rng.randrange(c)] += 2
        arcs = [(v, (v + 1) % c) for v in range(c)]
        next_id = c
        for v, size in enumerate(sizes):
            root = _random_full_binary_tree(size, rng, next_id, arcs)
            arcs.append((root, v))
            next_id += size
    else:
        raise ShapeInfeasible(f"unknown shape {shape!r}")
    return DirectedGraph(n, tuple(arcs))


def gadget_transform(dg):
    """Replace every arc (u, v) by five fresh nodes g1..g5 with edges
    u-g1-g2-g3-v and the 4-cycle g1-g4-g5-g2; the cycle sits next to the tail."""
    n = dg.node_count
    degree = [0] * n
    for u, v in dg.arcs:
        degree[u] += 1
        degree[v] += 1
    if max(degree) > 3:
        raise DegreeViolation("an original node would exceed degree 3")
    edges = []
    for j, (u, v) in enumerate(dg.arcs):
        g1, g2, g3, g4, g5 = range(n + 5 * j, n + 5 * j + 5)
        edges += [(u, g1), (g1, g2), (g2, g3), (g3, v), (g1, g4), (g4, g5), (g5, g2)]
    return Graph.from_edges(n + 5 * len(dg.arcs), edges)


def gadget_roles(dg):
    """Role name per node of ``gadget_transform(dg)``; original nodes get L, I or R
    by their (in, out) degrees and ``None`` when they fit none of those."""
    names = {(0, 1): "L", (2, 1): "I", (2, 0): "R"}
    roles = [names.get(t) for t in dg.degree_table()]
    for _ in dg.arcs:
        roles.extend(GADGET_ROLES)
    return roles


def unit_instance(graph):
    return Instance(graph)


# -- text formats ----------------------------------------------------------


def serialize_instance(inst):
    lines = [INSTANCE_HEADER, f"n {inst.n}"]
    lines += [f"e {u} {v}" for u, v in inst.graph.edges()]
    for v in range(inst.n):
        o = inst.orientation[v] if inst.orientation is not None else "-"
        s = inst.word[v] if inst.word is not None else "-"
        lines.append(f"i {v} {o} {s}")
    return "\n".join(lines) + "\n"


def _content_lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _int(token, number, what):
    try:
        value = int(token)
    except ValueError:
        raise ParseError(number, f"{what} {token!r} is not an integer") from None
    return value


def _read_header(lines, header):
    try:
        number, fields = next(lines)
    except StopIteration:
        raise ParseError(0, "empty file") from None
    if " ".join(fields) != header:
        raise ParseError(number, f"expected header {header!r}")
    try:
        number, fields = next(lines)
    except StopIteration:
        raise ParseError(number, "missing node count line") from None
    if len(fields) != 2 or fields[0] != "n":
        raise ParseError(number, "expected 'n <nodeCount>'")
    n = _int(fields[1], number, "node count")
    if n < 1:
        raise ParseError(number, "node count must be positive")
    return n, number


def parse_instance(text):
    lines = _content_lines(text)
    n, last = _read_header(lines, INSTANCE_HEADER)
    edges, seen_edges = [], set()
    orient, word = {}, {}
    for number, fields in lines:
        last = number
        kind = fields[0]
        if kind == "e":
            if orient:
                raise ParseError(number, "edge line after input lines")
            if len(fields) != 3:
                raise ParseError(number, "expected 'e <u> <v>'")
            u, v = _int(fields[1], number, "node"), _int(fields[2], number, "node")
            if u == v:
                raise ParseError(number, f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(number, f"edge {u}-{v} out of range")
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise ParseError(number, f"duplicate edge {u}-{v}")
            seen_edges.add(key)
            edges.append(key)
        elif kind == "i":
            if len(fields) != 4:
                raise ParseError(number, "expected 'i <v> <orient> <sym>'")
            v = _int(fields[1], number, "node")
            if not 0 <= v < n:
                raise ParseError(number, f"node {v} out of range")
            if v in orient:
                raise ParseError(number, f"duplicate input line for node {v}")
            o, s = fields[2], fields[3]
            if o not in ("A", "B", "C", "-"):
                raise ParseError(number, f"bad orientation {o!r}")
            if s not in ("0", "1", "_", "-"):
                raise ParseError(number, f"bad symbol {s!r}")
            orient[v], word[v] = o, s
        else:
            raise ParseError(number, f"unknown line type {kind!r}")
    missing = sorted(set(range(n)) - set(orient))
    if missing:
        raise ParseError(last, f"no input line for node {missing[0]}")
    try:
        graph = Graph.from_edges(n, edges)
    except GraphError as exc:
        raise ParseError(last, str(exc)) from None

    def component(values, name):
        present = {x != "-" for x in values}
        if len(present) > 1:
            raise ParseError(last, f"{name} given for some nodes but not others")
        return tuple(values) if present == {True} else None

    return Instance(
        graph,
        component([orient[v] for v in range(n)], "orientation"),
        component([word[v] for v in range(n)], "word symbol"),
    )


def serialize_digraph(dg):
    lines = [DIGRAPH_HEADER, f"n {dg.node_count}"]
    lines += [f"a {u} {v}" for u, v in dg.arcs]
    return "\n".join(lines) + "\n"


def parse_digraph(text):
    lines = _content_lines(text)
    n, last = _read_header(lines, DIGRAPH_HEADER)
    arcs = []
    for number, fields in lines:
        last = number
        if fields[0] != "a" or len(fields) != 3:
            raise ParseError(number, "expected 'a <tail> <head>'")
        arcs.append((_int(fields[1], number, "node"), _int(fields[2], number, "node")))
    try:
        return DirectedGraph(n, tuple(arcs))
    except GraphError as exc:
        raise ParseError(last, str(exc)) from None
