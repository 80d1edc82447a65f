"""Undirected communication graphs and directed graphs for the gadget encoding."""

from collections import deque
from dataclasses import dataclass, field


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple, finite, connected, undirected graph on nodes ``0..node_count-1``."""

    node_count: int
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        if self.node_count < 1:
            raise GraphError("a graph needs at least one node")
        if len(self.adjacency) != self.node_count:
            raise GraphError("adjacency must list every node")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise GraphError(f"self-loop at node {v}")
            if len(set(nbrs)) != len(nbrs):
                raise GraphError(f"duplicate edge at node {v}")
            for u in nbrs:
                if not 0 <= u < self.node_count:
                    raise GraphError(f"node {u} out of range")
                if v not in self.adjacency[u]:
                    raise GraphError(f"edge {v}-{u} is not symmetric")
        if len(_reachable(self.adjacency, 0)) != self.node_count:
            raise GraphError("graph is not connected")

    @classmethod
    def from_edges(cls, node_count, edges):
        adj = [set() for _ in range(node_count)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphError(f"edge {u}-{v} out of range")
            if v in adj[u]:
                raise GraphError(f"duplicate edge {u}-{v}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(node_count, tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def path(cls, node_count):
        return cls.from_edges(node_count, [(v, v + 1) for v in range(node_count - 1)])

    @classmethod
    def cycle(cls, node_count):
        if node_count < 3:
            raise GraphError("a cycle needs at least three nodes")
        return cls.from_edges(node_count, [(v, (v + 1) % node_count) for v in range(node_count)])

    def neighbours(self, v):
        return self.adjacency[v]

    def degree(self, v):
        return len(self.adjacency[v])

    def degrees(self):
        return [len(a) for a in self.adjacency]

    def edges(self):
        """Edges as ``(min, max)`` pairs in sorted order."""
        return sorted((v, u) for v, nbrs in enumerate(self.adjacency) for u in nbrs if v < u)

    @property
    def edge_count(self):
        return sum(len(a) for a in self.adjacency) // 2

    def max_degree(self):
        return max(len(a) for a in self.adjacency)

    def is_path(self):
        """Connected with exactly two degree-1 nodes and all others of degree 2 (or a single node)."""
        if self.node_count == 1:
            return True
        degs = self.degrees()
        return degs.count(1) == 2 and degs.count(2) == self.node_count - 2

    def is_cycle(self):
        return self.node_count >= 3 and all(d == 2 for d in self.degrees())

    def path_order(self):
        """Nodes of a path graph from one end to the other, starting at the lower-id end."""
        if not self.is_path():
            raise GraphError("not a path graph")
        if self.node_count == 1:
            return [0]
        start = min(v for v in range(self.node_count) if self.degree(v) == 1)
        return _walk(self.adjacency, start)

    def cycle_order(self):
        if not self.is_cycle():
            raise GraphError("not a cycle graph")
        return _walk(self.adjacency, 0)


def _walk(adjacency, start):
    order, prev, v = [start], None, start
    while True:
        nxt = [u for u in adjacency[v] if u != prev and u != start]
        if not nxt:
            return order
        prev, v = v, nxt[0]
        order.append(v)


def _reachable(adjacency, source):
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in adjacency[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


@dataclass(frozen=True)
class DirectedGraph:
    """Simple directed graph whose underlying undirected graph is connected."""

    node_count: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.node_count < 1:
            raise GraphError("a graph needs at least one node")
        seen = set()
        for u, v in self.arcs:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise GraphError(f"arc {u}->{v} out of range")
            if (u, v) in seen or (v, u) in seen:
                raise GraphError(f"duplicate arc {u}->{v}")
            seen.add((u, v))
        adj = [[] for _ in range(self.node_count)]
        for u, v in self.arcs:
            adj[u].append(v)
            adj[v].append(u)
        if len(_reachable(adj, 0)) != self.node_count:
            raise GraphError("underlying graph is not connected")

    def out_degree(self, v):
        return sum(1 for a, _ in self.arcs if a == v)

    def in_degree(self, v):
        return sum(1 for _, b in self.arcs if b == v)

    def degree_table(self):
        """``(indegree, outdegree)`` per node."""
        table = [[0, 0] for _ in range(self.node_count)]
        for u, v in self.arcs:
            table[u][1] += 1
            table[v][0] += 1
        return [tuple(t) for t in table]

    def is_binary_pseudotree(self):
        """Connected (checked on construction), outdegree <= 1 and indegree in {0, 2}."""
        return all(out <= 1 and inn in (0, 2) for inn, out in self.degree_table())
