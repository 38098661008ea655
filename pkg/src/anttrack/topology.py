"""Network graph and deterministic minimum-hop routing.

The graph is simple and undirected; routing is fixed minimum-hop with a
lexicographic tie-break so that forward and reverse paths are well defined
for the confirmation protocol.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Route = tuple[int, ...]


class TopologyError(Exception):
    """Base class for topology construction and routing errors."""


class MalformedSpec(TopologyError):
    """Topology description could not be parsed."""


class SelfLoop(TopologyError):
    """An edge connects a node to itself."""


class DuplicateEdge(TopologyError):
    """The same unordered node pair appears twice."""


class DisconnectedGraph(TopologyError):
    """The graph does not connect all nodes."""


class NoRoute(TopologyError):
    """No path exists between the requested nodes."""


class SameNode(TopologyError):
    """Route requested from a node to itself."""


@dataclass(frozen=True)
class NetworkTopology:
    """Immutable undirected simple graph with sorted adjacency lists."""

    node_count: int
    edges: frozenset[tuple[int, int]]
    adjacency: tuple[tuple[int, ...], ...]
    # distance tables from each destination, filled lazily by shortest_route
    _dist_cache: dict[int, list[int]] = field(
        default_factory=dict, repr=False, compare=False
    )

    @classmethod
    def from_edges(cls, node_count: int, edge_pairs) -> NetworkTopology:
        """Build and validate a topology from (a, b) node pairs."""
        if node_count < 1:
            raise MalformedSpec(f"node count must be >= 1, got {node_count}")
        edges: set[tuple[int, int]] = set()
        neighbors: list[set[int]] = [set() for _ in range(node_count)]
        for a, b in edge_pairs:
            if not (0 <= a < node_count and 0 <= b < node_count):
                raise MalformedSpec(f"edge ({a}, {b}) references a node outside [0, {node_count})")
            if a == b:
                raise SelfLoop(f"edge ({a}, {b}) is a self-loop")
            key = (a, b) if a < b else (b, a)
            if key in edges:
                raise DuplicateEdge(f"edge {key} listed more than once")
            edges.add(key)
            neighbors[a].add(b)
            neighbors[b].add(a)
        adjacency = tuple(tuple(sorted(ns)) for ns in neighbors)
        topo = cls(node_count, frozenset(edges), adjacency)
        unreachable = topo._unreachable_from(0)
        if unreachable:
            raise DisconnectedGraph(f"nodes unreachable from node 0: {sorted(unreachable)}")
        return topo

    def _unreachable_from(self, start: int) -> set[int]:
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for v in self.adjacency[u]:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return set(range(self.node_count)) - seen

    def has_edge(self, a: int, b: int) -> bool:
        key = (a, b) if a < b else (b, a)
        return key in self.edges

    def neighbors(self, node: int) -> tuple[int, ...]:
        return self.adjacency[node]

    def _dist_from(self, dst: int) -> list[int]:
        """Hop distances of every node to dst (BFS, cached per destination)."""
        cached = self._dist_cache.get(dst)
        if cached is not None:
            return cached
        dist = [-1] * self.node_count
        dist[dst] = 0
        frontier = [dst]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for v in self.adjacency[u]:
                    if dist[v] < 0:
                        dist[v] = d
                        nxt.append(v)
            frontier = nxt
        self._dist_cache[dst] = dist
        return dist


def load_topology(text: str) -> NetworkTopology:
    """Parse the line-oriented topology format.

    Line 1: ``nodes <N>``. Every further non-empty, non-comment line:
    ``edge <a> <b>``. Lines starting with ``#`` are comments.
    """
    node_count = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if node_count is None:
            if tokens[0] != "nodes" or len(tokens) != 2:
                raise MalformedSpec(f"line {lineno}: expected 'nodes <N>', got {line!r}")
            try:
                node_count = int(tokens[1])
            except ValueError:
                raise MalformedSpec(f"line {lineno}: node count {tokens[1]!r} is not an integer")
            continue
        if tokens[0] != "edge" or len(tokens) != 3:
            raise MalformedSpec(f"line {lineno}: expected 'edge <a> <b>', got {line!r}")
        try:
            a, b = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise MalformedSpec(f"line {lineno}: edge endpoints must be integers, got {line!r}")
        pairs.append((a, b))
    if node_count is None:
        raise MalformedSpec("missing 'nodes <N>' line")
    return NetworkTopology.from_edges(node_count, pairs)


def dump_topology(topo: NetworkTopology) -> str:
    """Render a topology back to the line-oriented file format."""
    lines = [f"nodes {topo.node_count}"]
    lines.extend(f"edge {a} {b}" for a, b in sorted(topo.edges))
    return "\n".join(lines) + "\n"


def shortest_route(topo: NetworkTopology, src: int, dst: int) -> Route:
    """Minimum-hop route from src to dst.

    Among equal-length routes the lexicographically smallest hop sequence is
    returned, which makes routing (and thus reverse paths) deterministic.
    """
    if not (0 <= src < topo.node_count and 0 <= dst < topo.node_count):
        raise NoRoute(f"invalid endpoints ({src}, {dst})")
    if src == dst:
        raise SameNode(f"route requested from node {src} to itself")
    dist = topo._dist_from(dst)
    if dist[src] < 0:
        raise NoRoute(f"no path from {src} to {dst}")
    hops = [src]
    cur = src
    d = dist[src]
    while cur != dst:
        # adjacency is sorted, so the first neighbor strictly closer to dst
        # is the lexicographically smallest valid continuation
        for v in topo.adjacency[cur]:
            if dist[v] == d - 1:
                cur = v
                d -= 1
                hops.append(v)
                break
    return tuple(hops)


def reverse_route(route: Route) -> Route:
    """Reversed hop sequence; valid because edges are undirected."""
    return tuple(reversed(route))


def is_valid_route(topo: NetworkTopology, route: Route) -> bool:
    """True if route is a simple path over existing connections."""
    if len(route) < 2 or len(set(route)) != len(route):
        return False
    return all(topo.has_edge(a, b) for a, b in zip(route, route[1:]))
