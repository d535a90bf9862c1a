"""Deterministic graph families.

Every generator numbers nodes so that each node other than 0 has a neighbour
with a smaller id; :func:`~hyperexp.graph.format_edge_list` output then
reloads with identical ids.

Random graphs draw from SplitMix64 (Steele, Lea and Flood's 64-bit mixer),
which is short enough to port bit-for-bit to any language.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable

from .graph import DomainError, Graph

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / float(1 << 53)


def _bfs_relabel(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Renumber nodes in BFS order from node 0 (neighbours visited by old id)."""
    edges = list(edges)
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    order = {0: 0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in order:
                order[w] = len(order)
                queue.append(w)
    if len(order) != n:
        raise DomainError("generated graph is disconnected")
    return Graph.from_edges(n, [(order[u], order[v]) for u, v in edges])


def path(n: int) -> Graph:
    if n < 2:
        raise DomainError("path needs n >= 2")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 2:
        raise DomainError("complete graph needs n >= 2")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> Graph:
    """Centre 0 joined to ``leaves`` leaves."""
    if leaves < 1:
        raise DomainError("star needs at least one leaf")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def balanced_tree(branching: int, depth: int) -> Graph:
    """Complete ``branching``-ary tree of the given depth, heap numbered (root 0)."""
    if branching < 1 or depth < 1:
        raise DomainError("balanced tree needs branching >= 1 and depth >= 1")
    n = sum(branching ** i for i in range(depth + 1))
    return Graph.from_edges(n, [((i - 1) // branching, i) for i in range(1, n)])


def grid(rows: int, cols: int) -> Graph:
    """Row-major ``rows x cols`` grid: node ``r*cols + c``."""
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise DomainError("grid needs at least two cells")
    edges = [(r * cols + c, r * cols + c + 1) for r in range(rows) for c in range(cols - 1)]
    edges += [(r * cols + c, (r + 1) * cols + c) for r in range(rows - 1) for c in range(cols)]
    return Graph.from_edges(rows * cols, edges)


def hypercube(dim: int) -> Graph:
    if dim < 1:
        raise DomainError("hypercube needs dim >= 1")
    n = 1 << dim
    return Graph.from_edges(n, [(u, u ^ (1 << b)) for u in range(n) for b in range(dim)
                                if u < u ^ (1 << b)])


def theta(*lengths: int) -> Graph:
    """Internally disjoint paths of the given lengths between s = 0 and t = n-1.

    Interior nodes are numbered path by path, so ``theta(2, 2, 6)`` has 9 nodes.
    """
    if len(lengths) < 2 or any(L < 1 for L in lengths) or sorted(lengths)[1] < 2:
        raise DomainError("theta needs >= 2 paths of length >= 1, at most one of length 1")
    n = 2 + sum(L - 1 for L in lengths)
    t = n - 1
    edges, nxt = [], 1
    for L in lengths:
        prev = 0
        for _ in range(L - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, t))
    return Graph.from_edges(n, edges)


def ring_of_cliques(k: int, c: int) -> Graph:
    """``k`` copies of ``K_c`` in a ring, kept ``(c-1)``-regular.

    In clique i the edge ``(u_i, v_i)`` between its first two nodes is dropped
    and replaced by the link ``v_i - u_{i+1}``.
    """
    if k < 3 or c < 3:
        raise DomainError("ring of cliques needs k >= 3 and c >= 3")
    edges = []
    for i in range(k):
        base = i * c
        for a in range(c):
            for b in range(a + 1, c):
                if (a, b) != (0, 1):
                    edges.append((base + a, base + b))
        edges.append((base + 1, ((i + 1) % k) * c))
    return _bfs_relabel(k * c, edges)


def erdos_renyi(n: int, prob: float, seed: int) -> Graph:
    """G(n, p) over pairs (i, j), i < j in row order, keeping the largest component.

    Ties between equally large components go to the one holding the smallest
    node; survivors are renumbered in BFS order from that smallest node.
    """
    if n < 2 or not 0 <= prob <= 1:
        raise DomainError("erdos_renyi needs n >= 2 and 0 <= p <= 1")
    rng = SplitMix64(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < prob]
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    best: list[int] = []
    for start in range(n):
        if seen[start]:
            continue
        comp, queue = [start], deque([start])
        seen[start] = True
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        if len(comp) > len(best):
            best = sorted(comp)
    if len(best) < 2:
        raise DomainError("largest component is a single node; raise p")
    index = {u: i for i, u in enumerate(best)}
    kept = [(index[u], index[v]) for u, v in edges if u in index]
    return _bfs_relabel(len(best), kept)


def trap_chain(m: int) -> Graph:
    """Adversarial instance for greedy shared-edge routing.

    A chain of ``m`` gadgets between junctions ``J_0 = s`` and ``J_m = t``. Gadget
    i has nodes ``x, y, c1, c2, e1, e2`` and edges
    ``J-x, x-y, y-J', x-c1-c2-J', J-e1-e2-y``.
    The unique shortest route ``J-x-y-J'`` is a trap: taking it twice forces a
    share, while two paths ``J-x-c1-c2-J'`` and ``J-e1-e2-y-J'`` are edge-disjoint.
    Node ids: ``s = 0``, ``t = n - 1``, with ``n = 1 + 7m``.
    """
    if m < 1:
        raise DomainError("trap_chain needs m >= 1")
    edges = []
    for i in range(m):
        junction = 7 * i
        x, y, c1, c2, e1, e2, nj = range(junction + 1, junction + 8)
        edges += [(junction, x), (x, y), (y, nj), (x, c1), (c1, c2), (c2, nj),
                  (junction, e1), (e1, e2), (e2, y)]
    return Graph.from_edges(7 * m + 1, edges)


def caterpillar(spine: int, leg: int) -> Graph:
    """A spine path with a pendant path of length ``leg`` at every spine node."""
    if spine < 2 or leg < 0:
        raise DomainError("caterpillar needs spine >= 2 and leg >= 0")
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i in range(spine):
        prev = i
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def triangle_strip(length: int) -> Graph:
    """Triangulated ladder: two rails ``a_i, b_i`` with rungs and diagonals ``a_i - b_{i+1}``."""
    if length < 2:
        raise DomainError("triangle strip needs length >= 2")
    edges = []
    for i in range(length):
        edges.append((2 * i, 2 * i + 1))
        if i + 1 < length:
            edges += [(2 * i, 2 * i + 2), (2 * i + 1, 2 * i + 3), (2 * i, 2 * i + 3)]
    return Graph.from_edges(2 * length, edges)


def _int(x) -> int:
    return int(x)


FAMILIES: dict[str, tuple[Callable[..., Graph], tuple[Callable, ...]]] = {
    "path": (path, (_int,)),
    "cycle": (cycle, (_int,)),
    "complete": (complete, (_int,)),
    "star": (star, (_int,)),
    "balanced-tree": (balanced_tree, (_int, _int)),
    "grid": (grid, (_int, _int)),
    "hypercube": (hypercube, (_int,)),
    "ring-of-cliques": (ring_of_cliques, (_int, _int)),
    "erdos-renyi": (erdos_renyi, (_int, float)),
    "trap-chain": (trap_chain, (_int,)),
    "caterpillar": (caterpillar, (_int, _int)),
    "triangle-strip": (triangle_strip, (_int,)),
}


def generate(family: str, params: list, seed: int | None = None) -> Graph:
    """Build a named family from string or numeric parameters.

    ``theta`` takes any number of lengths; ``erdos-renyi`` needs ``seed``.
    """
    if family == "theta":
        return theta(*(int(x) for x in params))
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; choose from "
                          + ", ".join(sorted([*FAMILIES, "theta"])))
    fn, casts = FAMILIES[family]
    if len(params) != len(casts):
        raise DomainError(f"{family} takes {len(casts)} parameter(s), got {len(params)}")
    try:
        args = [cast(x) for cast, x in zip(casts, params)]
    except ValueError as exc:
        raise DomainError(f"bad parameter for {family}: {exc}") from None
    if family == "erdos-renyi":
        if seed is None:
            raise DomainError("erdos-renyi needs a seed")
        return fn(*args, seed)
    return fn(*args)
