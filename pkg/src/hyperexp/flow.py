"""Integral max-flow / min-cut on undirected graphs, and path decomposition.

Each undirected edge carries one signed net flow value, stored against its
normalised orientation ``(u, v)`` with ``u < v``; positive means ``u -> v``.
Capacities are positive integers or :data:`INF`. INF edges are never
saturated and never appear in a reported min cut.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .graph import DomainError, Graph, norm_edge

INF = math.inf

Capacity = Union[int, float]
CapacityMap = Mapping[tuple[int, int], Capacity]


def uniform_capacities(g: Graph, value: int = 1,
                       infinite: Iterable[tuple[int, int]] = ()) -> dict[tuple[int, int], Capacity]:
    """``value`` on every edge except ``infinite`` ones, which get INF."""
    if value < 1:
        raise DomainError("finite capacities must be >= 1")
    cap: dict[tuple[int, int], Capacity] = {e: value for e in g.edges}
    for u, v in infinite:
        e = norm_edge(u, v)
        if e not in cap:
            raise DomainError(f"edge {e} is not in the graph")
        cap[e] = INF
    return cap


@dataclass(frozen=True)
class FlowResult:
    value: Capacity
    flow: dict                      # normalised edge -> signed net flow
    cut_edges: frozenset
    source_side: frozenset
    reached_cutoff: bool = False    # stopped early; value is a lower bound and the cut is not minimal

    def through(self, u: int, v: int) -> int:
        """Flow sent from ``u`` to ``v`` along that edge (negative if it runs the other way)."""
        f = self.flow.get(norm_edge(u, v), 0)
        return f if u < v else -f


def _capacity(cap: CapacityMap, e) -> Capacity:
    c = cap.get(e, 1)
    if c != INF and (c < 1 or int(c) != c):
        raise DomainError(f"capacity of {e} must be a positive integer or INF, got {c}")
    return c


def _residual(cap: CapacityMap, flow: dict, u: int, v: int) -> Capacity:
    e = norm_edge(u, v)
    c = _capacity(cap, e)
    f = flow.get(e, 0)
    return c - f if u < v else c + f


def _reachable(g: Graph, s: int, ok) -> tuple[dict, set]:
    parent = {s: None}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in parent and ok(u, w):
                parent[w] = u
                queue.append(w)
    return parent, set(parent)


def max_flow(g: Graph, cap: CapacityMap, s: int, t: int,
             cutoff: Optional[int] = None) -> FlowResult:
    """Edmonds-Karp: shortest augmenting paths, neighbours scanned in id order.

    Without ``cutoff``, an s-t path made only of INF edges yields value INF.
    With ``cutoff`` the search stops once that much flow is routed (bottlenecks
    are capped so INF paths carry a finite amount).
    """
    if s == t:
        raise DomainError("s and t must differ")
    flow: dict = {}
    if cutoff is None:
        _, side = _reachable(g, s, lambda u, w: _capacity(cap, norm_edge(u, w)) == INF)
        if t in side:
            return FlowResult(INF, flow, frozenset(), frozenset(side))
    value = 0
    while cutoff is None or value < cutoff:
        parent, _ = _reachable(g, s, lambda u, w: _residual(cap, flow, u, w) > 0)
        if t not in parent:
            break
        path = [t]
        while path[-1] != s:
            path.append(parent[path[-1]])
        path.reverse()
        push = min(_residual(cap, flow, a, b) for a, b in zip(path, path[1:]))
        if cutoff is not None:
            push = min(push, cutoff - value)
        push = int(push)
        for a, b in zip(path, path[1:]):
            e = norm_edge(a, b)
            flow[e] = flow.get(e, 0) + (push if a < b else -push)
            if flow[e] == 0:
                del flow[e]
        value += push
    _, side = _reachable(g, s, lambda u, w: _residual(cap, flow, u, w) > 0)
    side = frozenset(side)
    cut = frozenset(e for e in g.edges if (e[0] in side) != (e[1] in side))
    return FlowResult(value, flow, cut, side, reached_cutoff=t in side)


def _arc_flows(flow: Mapping) -> dict[int, dict[int, int]]:
    arcs: dict[int, dict[int, int]] = {}
    for (u, v), f in flow.items():
        a, b = (u, v) if f > 0 else (v, u)
        arcs.setdefault(a, {})[b] = abs(f)
    return arcs


def _cancel_cycles(arcs: dict[int, dict[int, int]]) -> None:
    """Remove every directed cycle of positive flow (smallest start node first)."""
    while True:
        cycle = _find_cycle(arcs)
        if cycle is None:
            return
        amount = min(arcs[a][b] for a, b in zip(cycle, cycle[1:]))
        for a, b in zip(cycle, cycle[1:]):
            arcs[a][b] -= amount
            if not arcs[a][b]:
                del arcs[a][b]


def _find_cycle(arcs: dict[int, dict[int, int]]) -> Optional[list[int]]:
    state: dict[int, int] = {}   # 1 = on stack, 2 = finished
    for root in sorted(arcs):
        if state.get(root):
            continue
        stack = [(root, iter(sorted(arcs.get(root, {}))))]
        trail = [root]
        state[root] = 1
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[u] = 2
                stack.pop()
                trail.pop()
                continue
            if state.get(nxt) == 1:
                return trail[trail.index(nxt):] + [nxt]
            if not state.get(nxt):
                state[nxt] = 1
                trail.append(nxt)
                stack.append((nxt, iter(sorted(arcs.get(nxt, {})))))
    return None


def decompose_paths(g: Graph, result: FlowResult, s: int, t: int,
                    kappa: int) -> list[tuple[int, ...]]:
    """Peel ``kappa`` unit s-t paths off the flow.

    Flow cycles are cancelled first; each walk then steps to the smallest
    neighbour still carrying flow away from the current node.
    """
    if kappa < 1:
        raise DomainError("kappa must be >= 1")
    if result.value == INF and not result.flow:
        raise DomainError("flow has value INF but no explicit routing; rerun with a cutoff")
    if result.value < kappa:
        raise DomainError(f"flow value {result.value} is below kappa={kappa}")
    arcs = _arc_flows(result.flow)
    _cancel_cycles(arcs)
    paths = []
    for _ in range(kappa):
        walk = [s]
        while walk[-1] != t:
            out = arcs.get(walk[-1])
            if not out:
                raise DomainError("flow is not conserved; cannot decompose")
            nxt = min(out)
            out[nxt] -= 1
            if not out[nxt]:
                del out[nxt]
            walk.append(nxt)
        paths.append(tuple(walk))
    return paths


def check_flow(g: Graph, cap: CapacityMap, result: FlowResult, s: int, t: int) -> list[str]:
    """Capacity, conservation and value checks; returns the violations."""
    problems = []
    net = [0] * g.n
    for e, f in result.flow.items():
        if e not in cap and e not in g.edges:
            problems.append(f"flow on non-edge {e}")
        if abs(f) > _capacity(cap, e):
            problems.append(f"edge {e} carries {f} above capacity")
        net[e[0]] -= f
        net[e[1]] += f
    for u in range(g.n):
        if u not in (s, t) and net[u]:
            problems.append(f"conservation fails at {u}")
    if result.value != INF and (net[t] != result.value or net[s] != -result.value):
        problems.append("value does not match net flow at s and t")
    return problems
