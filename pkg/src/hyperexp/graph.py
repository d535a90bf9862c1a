"""Immutable unweighted graphs plus the distance, ball, boundary and expansion primitives.

Node sets are plain ``frozenset[int]``; expansion ratios are exact
``fractions.Fraction`` values. Unreachable distances are ``None``
(exported as :data:`UNREACHABLE`) so they can never leak into arithmetic.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

UNREACHABLE = None

Edge = tuple[int, int]
NodeSet = frozenset


class DomainError(ValueError):
    """An input violates an operation's precondition."""


class GraphFormatError(DomainError):
    """The edge-list document cannot be turned into a valid graph."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple, undirected, connected graph on nodes ``0..n-1``.

    ``labels[i]`` is the input label of node ``i`` (the id map written back
    when reporting against the original file).
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]
    labels: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Optional[Sequence[int]] = None) -> "Graph":
        if n < 1:
            raise DomainError("graph needs at least one node")
        neighbours: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at node {u}")
            neighbours[u].add(v)
            neighbours[v].add(u)
        adj = tuple(tuple(sorted(nb)) for nb in neighbours)
        edge_list = tuple(sorted((u, v) for u in range(n) for v in adj[u] if u < v))
        g = cls(n, adj, edge_list, tuple(labels) if labels is not None else tuple(range(n)))
        comps = _components(adj, range(n))
        if len(comps) > 1:
            reps = (g.labels[comps[0][0]], g.labels[comps[1][0]])
            raise GraphFormatError(
                f"graph is disconnected: nodes {reps[0]} and {reps[1]} lie in different components")
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        # adjacency lists are sorted; bisect would do but lists are short
        return v in a

    def is_regular(self) -> bool:
        return len({len(a) for a in self.adj}) == 1

    def nodes(self) -> range:
        return range(self.n)


def load_graph(text: str) -> Graph:
    """Parse an edge-list document (two integer tokens per line, ``#`` comments)."""
    order: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected two tokens, got {len(tokens)}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token") from None
        if a < 0 or b < 0:
            raise GraphFormatError(f"line {lineno}: negative node id")
        if a == b:
            raise GraphFormatError(f"line {lineno}: self-loop at node {a}")
        for x in (a, b):
            if x not in order:
                order[x] = len(order)
        edges.append((order[a], order[b]))
    if not edges:
        raise GraphFormatError("empty edge list")
    labels = sorted(order, key=order.__getitem__)
    return Graph.from_edges(len(order), edges, labels)


def format_edge_list(g: Graph) -> str:
    """Serialise ``g`` so that :func:`load_graph` reproduces the same ids.

    Edges are emitted by (larger end, smaller end); when every node other than 0
    has a smaller-id neighbour, first appearances then run 0, 1, 2, ...
    """
    lines = [f"# n={g.n} m={g.m}"]
    for u, v in sorted(g.edges, key=lambda e: (e[1], e[0])):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def _components(adj: Sequence[Sequence[int]], nodes: Iterable[int],
                removed: frozenset = frozenset()) -> list[list[int]]:
    seen = set(removed)
    comps = []
    for start in nodes:
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def _bfs(adj: Sequence[Sequence[int]], n: int, source: int,
         blocked: frozenset = frozenset()) -> list[Optional[int]]:
    dist: list[Optional[int]] = [UNREACHABLE] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] is UNREACHABLE and w not in blocked:
                dist[w] = du
                queue.append(w)
    return dist


def multi_source_bfs(g: Graph, sources: Iterable[int]) -> list[int]:
    """Distance from every node to the nearest node of ``sources``."""
    dist: list[Optional[int]] = [UNREACHABLE] * g.n
    queue = deque()
    for s in sources:
        if dist[s] is UNREACHABLE:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] is UNREACHABLE:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist  # type: ignore[return-value]


def bfs_distances(g: Graph, source: int) -> list[int]:
    if not 0 <= source < g.n:
        raise DomainError(f"source {source} not in graph")
    return _bfs(g.adj, g.n, source)  # type: ignore[return-value]


def bfs_levels(dist: Sequence[Optional[int]]) -> list[list[int]]:
    """Group nodes by distance; unreachable nodes are dropped."""
    levels: list[list[int]] = []
    for v, d in enumerate(dist):
        if d is UNREACHABLE:
            continue
        while len(levels) <= d:
            levels.append([])
        levels[d].append(v)
    return levels


def canonical_shortest_path(g: Graph, u: int, v: int) -> tuple[int, ...]:
    """Deterministic shortest ``u``-``v`` path.

    Walks back from ``v``, always stepping to the smallest-id neighbour one
    level closer to ``u``. Returns the node sequence starting at ``u``.
    """
    if u == v:
        raise DomainError("canonical path needs distinct endpoints")
    dist = bfs_distances(g, u)
    path = [v]
    cur = v
    while cur != u:
        want = dist[cur] - 1
        cur = next(w for w in g.adj[cur] if dist[w] == want)
        path.append(cur)
    path.reverse()
    return tuple(path)


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [norm_edge(a, b) for a, b in zip(path, path[1:])]


def ball(g: Graph, u: int, r: int) -> frozenset:
    if r < 0:
        raise DomainError("radius must be non-negative")
    dist = bfs_distances(g, u)
    return frozenset(v for v, d in enumerate(dist) if d <= r)


def boundary(g: Graph, s: Iterable[int]) -> frozenset:
    """Nodes outside ``s`` with at least one neighbour inside (a node set, not edges)."""
    s = s if isinstance(s, (set, frozenset)) else frozenset(s)
    out = set()
    for u in s:
        for w in g.adj[u]:
            if w not in s:
                out.add(w)
    return frozenset(out)


def cut_edge_set(g: Graph, s: Iterable[int]) -> frozenset:
    s = s if isinstance(s, (set, frozenset)) else frozenset(s)
    return frozenset(norm_edge(u, w) for u in s for w in g.adj[u] if w not in s)


def volume(g: Graph, s: Iterable[int]) -> int:
    return sum(len(g.adj[u]) for u in s)


def _check_expansion_domain(g: Graph, s) -> frozenset:
    s = frozenset(s)
    if not 1 <= len(s) <= g.n // 2:
        raise DomainError(f"expansion needs 1 <= |S| <= floor(n/2) = {g.n // 2}, got |S|={len(s)}")
    return s


def node_expansion(g: Graph, s: Iterable[int]) -> Fraction:
    s = _check_expansion_domain(g, s)
    return Fraction(len(boundary(g, s)), len(s))


def edge_expansion(g: Graph, s: Iterable[int]) -> Fraction:
    s = _check_expansion_domain(g, s)
    return Fraction(len(cut_edge_set(g, s)), len(s))


def normalized_expansion(g: Graph, s: Iterable[int]) -> Fraction:
    """``|cut(S)| / vol(S)`` with vol the degree sum."""
    s = _check_expansion_domain(g, s)
    return Fraction(len(cut_edge_set(g, s)), volume(g, s))


def diameter_pair(g: Graph) -> tuple[int, int, int]:
    best = (0, 0, 0)
    for p in range(g.n):
        dist = _bfs(g.adj, g.n, p)
        for q in range(p + 1, g.n):
            if dist[q] > best[2]:
                best = (p, q, dist[q])
    if g.n == 1:
        return (0, 0, 0)
    return best


def max_degree_excluding(g: Graph, excluded: Iterable[int]) -> int:
    excluded = frozenset(excluded)
    return max((len(g.adj[u]) for u in range(g.n) if u not in excluded), default=0)


@dataclass(frozen=True)
class InducedSubgraph:
    """``g`` with the nodes of ``removed`` deleted; may be disconnected.

    Node ids stay those of the parent graph.
    """

    parent: Graph
    removed: frozenset

    def distances(self, source: int) -> list[Optional[int]]:
        if source in self.removed:
            raise DomainError(f"node {source} was removed")
        return _bfs(self.parent.adj, self.parent.n, source, self.removed)

    def dist(self, u: int, v: int) -> Optional[int]:
        return self.distances(u)[v]

    def components(self) -> list[list[int]]:
        return _components(self.parent.adj, range(self.parent.n), self.removed)

    def ball(self, u: int, r: Optional[int] = None) -> frozenset:
        """Ball of radius ``r`` around ``u``; ``r=None`` means everything reachable."""
        dist = self.distances(u)
        return frozenset(v for v, d in enumerate(dist)
                         if d is not UNREACHABLE and (r is None or d <= r))


def remove_nodes(g: Graph, c: Iterable[int]) -> InducedSubgraph:
    c = frozenset(c)
    if len(c) >= g.n and set(range(g.n)) <= c:
        raise DomainError("cannot remove every node")
    return InducedSubgraph(g, c)
