"""Centralised reference implementations used as ground truth in tests and `verify`."""

from collections import deque
from itertools import groupby
from typing import NamedTuple

from .graph import DirectedGraph, GraphError
from .instances import gadget_transform, is_consistent_sequence
from .thuemorse import ABORT, ACCEPT, LOCALLY_VALID, SEPARATORS_PER_BUFFER, match_substitute
from .words import END, SEPARATOR, compress, is_valid_word, pad


class MalformedConfiguration(ValueError):
    pass


class NoLeaf(ValueError):
    pass


class Configuration(NamedTuple):
    symbols: str
    circular: bool = False


def decide_thue_morse(inst):
    """``"yes"`` iff the graph is a path, the orientation is consistent and the word is valid."""
    g = inst.graph
    if inst.orientation is None or inst.word is None or not g.is_path():
        return "no"
    order = g.path_order()
    if not is_consistent_sequence([inst.orientation[v] for v in order]):
        return "no"
    word = "".join(inst.word[v] for v in order)
    return "yes" if is_valid_word(word) or is_valid_word(word[::-1]) else "no"


def passes_prologue(inst):
    """True iff no node rejects in the two radius-1 rounds: path or cycle, consistent
    orientation, and every window ``x c z`` (with ``|`` at path ends) locally valid."""
    g = inst.graph
    if inst.orientation is None or inst.word is None or g.node_count < 2:
        return False
    if g.is_path():
        order = g.path_order()
        orients = [inst.orientation[v] for v in order]
        s = END + "".join(inst.word[v] for v in order) + END
    elif g.is_cycle():
        order = g.cycle_order()
        orients = [inst.orientation[v] for v in order + order[:1]]
        word = "".join(inst.word[v] for v in order)
        s = word[-1] + word + word[0]
    else:
        return False
    if not is_consistent_sequence(orients):
        return False
    return all(s[j : j + 3] in LOCALLY_VALID for j in range(len(s) - 2))


def configuration_of(inst):
    """The current-symbol sequence of a path or cycle instance, in walk order."""
    g = inst.graph
    if g.is_path():
        order, circular = g.path_order(), False
    elif g.is_cycle():
        order, circular = g.cycle_order(), True
    else:
        raise GraphError("not a path or cycle")
    return Configuration("".join(inst.word[v] for v in order), circular), order


def _blocks(cfg):
    """Maximal runs as (symbol, length), rotated so a cycle does not split a run."""
    s = cfg.symbols
    if not s:
        raise MalformedConfiguration("empty configuration")
    shift = 0
    if cfg.circular:
        if len(set(s)) == 1:
            raise MalformedConfiguration("circular configuration with a single block")
        while s[shift - 1] == s[shift]:
            shift += 1
        s = s[shift:] + s[:shift]
    runs = [(x, len(list(grp))) for x, grp in groupby(s)]
    syms = [x for x, _ in runs]
    pairs = zip(syms, syms[1:] + (syms[:1] if cfg.circular else []))
    for a, b in pairs:
        if a != SEPARATOR and b != SEPARATOR:
            raise MalformedConfiguration("two letter blocks are adjacent")
    if cfg.circular and SEPARATOR not in syms:
        raise MalformedConfiguration("circular configuration without separators")
    return runs, shift


def _window(syms, idx, step, circular):
    """Block symbols walking from block ``idx`` in direction ``step`` until the
    8th separator or the end marker (both included)."""
    out, seps, j, m = [], 0, idx, len(syms)
    while seps < SEPARATORS_PER_BUFFER:
        j += step
        if not circular and not 0 <= j < m:
            out.append(END)
            break
        x = syms[j % m]
        out.append(x)
        if x == SEPARATOR:
            seps += 1
    return "".join(out)


def block_views(cfg):
    """Compressed view and position for every block of ``cfg``."""
    runs, _ = _blocks(cfg)
    syms = [x for x, _ in runs]
    views = []
    for idx, x in enumerate(syms):
        left = _window(syms, idx, -1, cfg.circular)[::-1]
        right = _window(syms, idx, 1, cfg.circular)
        views.append((left + x + right, len(left) + 1))
    return views


def node_views(cfg):
    """Compressed view and position for every position of ``cfg``."""
    runs, shift = _blocks(cfg)
    views = block_views(cfg)
    per_pos = []
    for (view, (_, length)) in zip(views, runs):
        per_pos += [view] * length
    if shift:
        per_pos = per_pos[-shift:] + per_pos[:-shift]
    return per_pos


def rewrite_phase(cfg):
    """One phase of pattern substitution over the whole configuration.

    Returns the new :class:`Configuration`, or ``ACCEPT`` / ``ABORT``.
    """
    runs, shift = _blocks(cfg)
    results = [match_substitute(view, q) for view, q in block_views(cfg)]
    if ABORT in results:
        return ABORT
    if ACCEPT in results:
        return ACCEPT
    new = "".join(r * length for r, (_, length) in zip(results, runs))
    if shift:
        new = new[-shift:] + new[:-shift]
    return Configuration(new, cfg.circular)


def run_phases(cfg, limit=64):
    """Iterate :func:`rewrite_phase`; returns the list of phase outcomes."""
    outcomes = []
    while len(outcomes) < limit:
        result = rewrite_phase(cfg)
        outcomes.append(result)
        if result in (ACCEPT, ABORT):
            break
        cfg = result
    return outcomes


def padded_shape(symbols):
    """Block length ``l`` and letter sequence if ``symbols`` is ``_x1^l_x2^l_..._xp^l_``."""
    runs = [(x, len(list(grp))) for x, grp in groupby(symbols)]
    if not runs or runs[0][0] != SEPARATOR or runs[-1][0] != SEPARATOR:
        return None
    seps, letters = runs[0::2], runs[1::2]
    if any(x != SEPARATOR or k != 1 for x, k in seps):
        return None
    if any(x == SEPARATOR for x, _ in letters) or len({k for _, k in letters}) > 1:
        return None
    return (letters[0][1] if letters else 0), "".join(x for x, _ in letters)


_GROUP_IMAGE = {"01101001": "01", "10010110": "10"}


def rewrite_blocks(cfg):
    """Direct block rewriting of a path configuration with uniform block length:
    each aligned group _0^l_1^l_1^l_0^l_1^l_0^l_0^l_1^l_ becomes _0^m_1^m_ with
    m = 4l + 3 (and the complement likewise)."""
    if cfg.circular:
        raise MalformedConfiguration("block rewriting is defined for paths only")
    shape = padded_shape(cfg.symbols)
    if shape is None:
        raise MalformedConfiguration("not a uniformly padded configuration")
    block, letters = shape
    if letters in ("0", "0110"):
        return ACCEPT
    if not letters or len(letters) % 8:
        return ABORT
    out = []
    for j in range(0, len(letters), 8):
        image = _GROUP_IMAGE.get(letters[j : j + 8])
        if image is None:
            return ABORT
        out.append(image)
    return Configuration(pad("".join(out), 4 * block + 3))


def accepts_whole(cfg):
    return not cfg.circular and compress(END + cfg.symbols + END) in ("|_0_|", "|_0_1_1_0_|")


# -- leaf parity -------------------------------------------------------------


def bfs_leaf_parity(g):
    """Parity of the distance from every node to its nearest degree-1 node."""
    leaves = [v for v in range(g.node_count) if g.degree(v) == 1]
    if not leaves:
        raise NoLeaf("graph has no degree-1 node")
    dist = {v: 0 for v in leaves}
    queue = deque(leaves)
    while queue:
        v = queue.popleft()
        for u in g.neighbours(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return {v: d % 2 for v, d in dist.items()}


def decode_good_graph(g):
    """Recover the directed graph behind a gadget-encoded graph.

    Returns ``(digraph, original_nodes)`` or ``None``. ``original_nodes`` lists
    the ids of ``g`` standing for digraph nodes ``0..k-1``. Arc tails must have
    degree 1 or 3 (as in every binary pseudotree), which fixes which side of each
    4-cycle is the tail side. A non-``None`` result always rebuilds ``g`` exactly.
    """
    deg = g.degrees()
    if any(d not in (1, 2, 3) for d in deg):
        return None
    adj = [set(a) for a in g.adjacency]
    gadgets = {}
    for g1 in range(g.node_count):
        if deg[g1] != 3:
            continue
        for g2 in adj[g1]:
            if deg[g2] != 3:
                continue
            for g4 in adj[g1]:
                if g4 == g2 or deg[g4] != 2:
                    continue
                (g5,) = adj[g4] - {g1}
                if deg[g5] != 2 or g2 not in adj[g5]:
                    continue
                (tail,) = adj[g1] - {g2, g4}
                (g3,) = adj[g2] - {g1, g5}
                if deg[tail] == 2 or deg[g3] != 2:
                    continue
                (head,) = adj[g3] - {g2}
                key = frozenset((g1, g2, g3, g4, g5))
                if key in gadgets:
                    return None
                gadgets[key] = (tail, g1, g2, g3, g4, g5, head)
    internal = set()
    for key in gadgets:
        if internal & key:
            return None
        internal |= key
    originals = [v for v in range(g.node_count) if v not in internal]
    if not originals:
        return None
    index = {v: j for j, v in enumerate(originals)}
    arcs = []
    for tail, *_, head in gadgets.values():
        if tail in internal or head in internal:
            return None
        arcs.append((index[tail], index[head]))
    try:
        dg = DirectedGraph(len(originals), tuple(sorted(arcs)))
        rebuilt = gadget_transform(dg)
    except (GraphError, ValueError):
        return None
    # the relabelled transform must reproduce g edge for edge
    relabel = dict(enumerate(originals))
    for j, (tail, g1, g2, g3, g4, g5, head) in enumerate(
        sorted(gadgets.values(), key=lambda t: (index[t[0]], index[t[6]]))
    ):
        base = len(originals) + 5 * j
        relabel.update({base: g1, base + 1: g2, base + 2: g3, base + 3: g4, base + 4: g5})
    if rebuilt.node_count != g.node_count:
        return None
    mapped = {frozenset((relabel[u], relabel[v])) for u, v in rebuilt.edges()}
    if mapped != {frozenset(e) for e in g.edges()}:
        return None
    return dg, originals


def good_graph_check(g):
    """True iff ``g`` is the gadget transform of a directed binary pseudotree."""
    decoded = decode_good_graph(g)
    return decoded is not None and decoded[0].is_binary_pseudotree()
