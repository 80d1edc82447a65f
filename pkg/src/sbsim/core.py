"""Synchronous anonymous broadcast executor.

Every round each node broadcasts one message to all neighbours, receives the
*set* of its neighbours' messages and moves to a new state. Algorithms never see
node identifiers; they only get their degree and local input at start-up.
"""

import math
import weakref
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Sequence

from .graph import Graph


class SimulationError(Exception):
    pass


class NonHalting(SimulationError):
    def __init__(self, rounds, running):
        super().__init__(f"{running} node(s) still running after {rounds} rounds")
        self.rounds = rounds
        self.running = running


class InputMismatch(SimulationError):
    pass


class Algorithm:
    """A distributed state machine.

    Subclasses implement the four methods below as pure functions. States and
    messages must be hashable values whose equality agrees with
    :func:`canonical_encoding`; halting states must be absorbing.
    """

    name = "algorithm"

    def init(self, degree: int, local_input: Any) -> Hashable:
        raise NotImplementedError

    def message(self, state) -> Hashable:
        raise NotImplementedError

    def transition(self, state, received: frozenset) -> Hashable:
        raise NotImplementedError

    def is_halting(self, state) -> bool:
        raise NotImplementedError

    def output(self, state):
        """Local output of a halting state."""
        return state


def canonical_encoding(value) -> bytes:
    """Deterministic byte encoding of a state or message (sets are sorted)."""
    return _encode(value).encode("utf-8")


def _encode(value):
    if value is None or isinstance(value, (bool, int)):
        return repr(value)
    if isinstance(value, str):
        return "s" + repr(value)
    if isinstance(value, (frozenset, set)):
        return "{" + ",".join(sorted(_encode(x) for x in value)) + "}"
    if isinstance(value, tuple):
        tag = type(value).__name__ if hasattr(value, "_fields") else ""
        return tag + "(" + ",".join(_encode(x) for x in value) + ")"
    if isinstance(value, dict):
        items = sorted((_encode(k), _encode(v)) for k, v in value.items())
        return "<" + ",".join(f"{k}:{v}" for k, v in items) + ">"
    raise TypeError(f"no canonical encoding for {type(value).__name__}")


def space_bits(distinct_states: int) -> int:
    return math.ceil(math.log2(distinct_states)) if distinct_states > 1 else 0


@dataclass
class ExecutionResult:
    outputs: dict
    rounds: int
    distinct_states: int
    space_bits: int
    trace: list | None = field(default=None, repr=False)

    def decision(self):
        """The common output if every node agrees, else ``None``."""
        values = set(self.outputs.values())
        return values.pop() if len(values) == 1 else None


class _Table:
    """Interned states and messages plus memoised transitions of one algorithm."""

    def __init__(self, algorithm):
        self.algorithm = algorithm
        self.state_id = {}
        self.states = []
        self.halting = []
        self.message_of = []
        self.message_id = {}
        self.messages = []
        self.step = {}

    def intern(self, state):
        sid = self.state_id.get(state)
        if sid is None:
            sid = len(self.states)
            self.state_id[state] = sid
            self.states.append(state)
            self.halting.append(bool(self.algorithm.is_halting(state)))
            msg = self.algorithm.message(state)
            mid = self.message_id.get(msg)
            if mid is None:
                mid = len(self.messages)
                self.message_id[msg] = mid
                self.messages.append(msg)
            self.message_of.append(mid)
        return sid

    def transition(self, sid, mids):
        key = (sid, mids)
        nxt = self.step.get(key)
        if nxt is None:
            received = frozenset(self.messages[m] for m in mids)
            nxt = self.intern(self.algorithm.transition(self.states[sid], received))
            self.step[key] = nxt
        return nxt


_tables = weakref.WeakKeyDictionary()


def _table_for(algorithm):
    table = _tables.get(algorithm)
    if table is None:
        table = _tables[algorithm] = _Table(algorithm)
    return table


def _check_inputs(graph, inputs):
    if isinstance(inputs, dict):
        if set(inputs) != set(range(graph.node_count)):
            raise InputMismatch("input must be defined on exactly the node set")
        return [inputs[v] for v in range(graph.node_count)]
    if len(inputs) != graph.node_count:
        raise InputMismatch(f"{len(inputs)} inputs for {graph.node_count} nodes")
    return list(inputs)


Observer = Callable[[int, int, Any, Any], None]


def run_execution(
    graph: Graph,
    inputs: Sequence | dict,
    algorithm: Algorithm,
    max_rounds: int | None = None,
    capture_trace: bool = False,
    observer: Observer | None = None,
) -> ExecutionResult:
    """Run ``algorithm`` on ``(graph, inputs)`` until every node halts.

    ``max_rounds`` defaults to ``64 * n``. ``observer(round, node, old, new)`` is
    called for every state change, in node order within a round.

    Only nodes whose own state or some neighbour's state changed in the previous
    round are re-evaluated; the others would map to the same state again.
    """
    local_inputs = _check_inputs(graph, inputs)
    n = graph.node_count
    if max_rounds is None:
        max_rounds = 64 * n
    if max_rounds < 1:
        raise ValueError("max_rounds must be positive")

    table = _table_for(algorithm)
    adj = graph.adjacency
    halting = table.halting
    message_of = table.message_of
    states = table.states

    cur = [table.intern(algorithm.init(len(adj[v]), local_inputs[v])) for v in range(n)]
    msg = [message_of[s] for s in cur]
    visited = set(cur)
    running = sum(1 for s in cur if not halting[s])
    trace = [[states[s] for s in cur]] if capture_trace else None

    rounds = 0
    pending = [v for v in range(n) if not halting[cur[v]]]
    while running:
        if rounds >= max_rounds or not pending:
            # no pending nodes means a fixed point that can never halt
            raise NonHalting(max_rounds, running)
        rounds += 1
        changes = []
        for v in pending:
            sid = cur[v]
            nxt = table.transition(sid, frozenset([msg[u] for u in adj[v]]))
            if nxt != sid:
                changes.append((v, nxt))
        touched = set()
        for v, nxt in changes:
            if observer is not None:
                observer(rounds, v, states[cur[v]], states[nxt])
            cur[v] = nxt
            msg[v] = message_of[nxt]
            visited.add(nxt)
            if halting[nxt]:
                running -= 1
            else:
                touched.add(v)
            touched.update(adj[v])
        pending = sorted(v for v in touched if not halting[cur[v]])
        if capture_trace:
            trace.append([states[s] for s in cur])

    outputs = {v: algorithm.output(states[cur[v]]) for v in range(n)}
    distinct = len(visited)
    return ExecutionResult(outputs, rounds, distinct, space_bits(distinct), trace)


def deliver_round(graph: Graph, states: dict | Sequence, algorithm: Algorithm) -> dict:
    """One synchronous round from the given per-node states (no memoisation)."""
    if isinstance(states, dict):
        if set(states) != set(range(graph.node_count)):
            raise InputMismatch("states must be defined on exactly the node set")
        states = [states[v] for v in range(graph.node_count)]
    messages = [algorithm.message(s) for s in states]
    return {
        v: algorithm.transition(states[v], frozenset(messages[u] for u in graph.adjacency[v]))
        for v in range(graph.node_count)
    }


def received_set(graph: Graph, states, algorithm: Algorithm, v: int) -> frozenset:
    """The message set node ``v`` receives when its neighbours are in ``states``."""
    return frozenset(algorithm.message(states[u]) for u in graph.adjacency[v])
