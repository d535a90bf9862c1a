"""Edge hitting sets for small s-t cuts, and routing with few shared edges.

* :func:`ehssc_approx` repeatedly takes a minimum s-t cut of at most ``k``
  edges, adds it to the hitting set and makes those edges uncuttable; when
  ``k`` is too large for that to be efficient it falls back to the edges of
  one shortest path.
* :func:`uumv_approx` routes ``kappa`` paths through the capacity map
  "INF on hit edges, ``r`` elsewhere", so only hit edges can be shared.
* :func:`greedy_uumv` is the naive path-by-path baseline.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .bounds import ehssc_ratio_bound
from .flow import INF, decompose_paths, max_flow, uniform_capacities
from .graph import (
    DomainError,
    Graph,
    ball,
    canonical_shortest_path,
    max_degree_excluding,
    norm_edge,
    path_edges,
)
from .hyperbolicity import resolve_delta


class InvariantError(RuntimeError):
    """A guarantee that should hold by construction was observed to fail."""


@dataclass(frozen=True)
class ExcludedDegree:
    d: int
    source: str               # "override" | "excluding"
    excluded: frozenset       # nodes whose degree was ignored


def excluded_max_degree(g: Graph, s: int, t: Optional[int], delta: Fraction,
                        override: Optional[int] = None) -> ExcludedDegree:
    """Max degree outside ``{s, t}`` and ``B(s, floor(35 delta))``, floored at 2."""
    if override is not None:
        if override < 1:
            raise DomainError("degree override must be >= 1")
        return ExcludedDegree(override, "override", frozenset())
    excluded = set(ball(g, s, int(35 * delta)))
    excluded.add(s)
    if t is not None:
        excluded.add(t)
    return ExcludedDegree(max(2, max_degree_excluding(g, excluded)), "excluding", frozenset(excluded))


@dataclass(frozen=True)
class EhsscSolution:
    hit_edges: frozenset
    branch: str                       # "loop" | "shortest-path"
    iterations: tuple[frozenset, ...]
    k: int
    delta: Fraction
    delta_source: str
    degree: ExcludedDegree
    threshold: int
    threshold_overridden: bool
    n: int

    @property
    def ratio_bound(self) -> Fraction:
        return ehssc_ratio_bound(self.degree.d, self.delta, self.n)


def _check_st(g: Graph, s: int, t: int) -> None:
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise DomainError("s and t must be nodes of the graph")
    if s == t:
        raise DomainError("s and t must differ")


def min_cut_with_hits(g: Graph, s: int, t: int, hits: Iterable, k: int):
    """Max flow with ``hits`` at INF and unit capacity elsewhere, stopped at ``k + 1``."""
    return max_flow(g, uniform_capacities(g, 1, hits), s, t, cutoff=k + 1)


def ehssc_is_valid(g: Graph, s: int, t: int, k: int, hits: Iterable) -> bool:
    """True iff every s-t cut with at most ``k`` edges contains a hit edge."""
    res = min_cut_with_hits(g, s, t, hits, k)
    return res.value == INF or res.value > k


def ehssc_approx(g: Graph, s: int, t: int, k: int, delta=None, d: Optional[int] = None,
                 threshold_override: Optional[int] = None) -> EhsscSolution:
    _check_st(g, s, t)
    if not 0 < k <= g.m:
        raise DomainError(f"need 0 < k <= m = {g.m}, got k={k}")
    choice = resolve_delta(g, delta)
    degree = excluded_max_degree(g, s, t, choice.value, d)
    if threshold_override is not None:
        threshold = threshold_override
    else:
        threshold = degree.d ** (int(12 * choice.value) + 1)
    if k <= threshold:
        hits: set = set()
        rounds = []
        while True:
            res = min_cut_with_hits(g, s, t, hits, k)
            if res.value == INF or res.value > k:
                break
            cut = res.cut_edges
            if not cut or cut & hits or len(cut) > k:
                raise InvariantError(f"loop produced an unusable cut {sorted(cut)}")
            rounds.append(cut)
            hits |= cut
        branch, chosen = "loop", frozenset(hits)
    else:
        rounds = []
        branch = "shortest-path"
        chosen = frozenset(path_edges(canonical_shortest_path(g, s, t)))
    return EhsscSolution(chosen, branch, tuple(rounds), k, choice.value, choice.source,
                         degree, threshold, threshold_override is not None, g.n)


def count_shared_edges(paths: Sequence[Sequence[int]], r: int) -> tuple[int, frozenset]:
    """Edges used by more than ``r`` of the paths (a path using an edge twice counts twice)."""
    usage = Counter(norm_edge(a, b) for p in paths for a, b in zip(p, p[1:]))
    shared = frozenset(e for e, c in usage.items() if c > r)
    return len(shared), shared


@dataclass(frozen=True)
class UumvSolution:
    paths: tuple[tuple[int, ...], ...]
    shared_edges: frozenset
    hitting_set_size: Optional[int]
    r: int
    kappa: int
    method: str                          # "hitting-set" | "greedy"
    hit_edges: Optional[frozenset] = None
    ehssc: Optional[EhsscSolution] = None

    @property
    def shared_count(self) -> int:
        return len(self.shared_edges)


def _check_rk(r: int, kappa: int) -> None:
    if not 0 < r < kappa:
        raise DomainError(f"need 0 < r < kappa, got r={r}, kappa={kappa}")


def uumv_approx(g: Graph, s: int, t: int, r: int, kappa: int, delta=None,
                d: Optional[int] = None, *, hitting_set: Optional[Iterable] = None,
                threshold_override: Optional[int] = None) -> UumvSolution:
    """Route ``kappa`` paths sharing only edges of an EHSSC hitting set.

    ``hitting_set`` replaces the approximate hitting set (e.g. with an optimal
    one); it must hit every s-t cut of at most ``ceil(kappa/r) - 1`` edges.
    """
    _check_st(g, s, t)
    _check_rk(r, kappa)
    # no cut has more than m edges, so larger k describes the same cut family
    k = min(-(-kappa // r) - 1, g.m)
    sol = None
    if hitting_set is None:
        sol = ehssc_approx(g, s, t, k, delta, d, threshold_override)
        hits = sol.hit_edges
    else:
        hits = frozenset(norm_edge(u, v) for u, v in hitting_set)
        missing = [e for e in hits if not g.has_edge(*e)]
        if missing:
            raise DomainError(f"hitting set contains non-edges {sorted(missing)}")
        if not ehssc_is_valid(g, s, t, k, hits):
            raise DomainError(f"supplied edges miss some s-t cut of at most {k} edges")
    res = max_flow(g, uniform_capacities(g, r, hits), s, t, cutoff=kappa)
    if res.value < kappa:
        raise InvariantError(f"flow {res.value} < kappa={kappa} despite a valid hitting set")
    paths = decompose_paths(g, res, s, t, kappa)
    _, shared = count_shared_edges(paths, r)
    if not shared <= hits:
        raise InvariantError("a non-hit edge carries more than r paths")
    return UumvSolution(tuple(paths), shared, len(hits), r, kappa, "hitting-set", hits, sol)


def _least_increment_path(g: Graph, s: int, t: int, usage: Counter, r: int) -> tuple[int, ...]:
    # cost = (edges turned shared, length, node sequence); all parts are monotone along a path
    best = {s: (0, 0)}
    heap = [(0, 0, (s,))]
    done = set()
    while heap:
        inc, length, walk = heapq.heappop(heap)
        u = walk[-1]
        if u in done:
            continue
        done.add(u)
        if u == t:
            return walk
        for w in g.adj[u]:
            if w in done:
                continue
            step = 1 if usage[norm_edge(u, w)] == r else 0
            cand = (inc + step, length + 1)
            if w not in best or cand <= best[w]:
                best[w] = cand
                heapq.heappush(heap, (cand[0], cand[1], walk + (w,)))
    raise DomainError("t is unreachable from s")


def greedy_uumv(g: Graph, s: int, t: int, r: int, kappa: int) -> UumvSolution:
    """Add paths one at a time, each minimising the number of newly shared edges.

    Ties go to the shorter path, then the lexicographically smaller one.
    """
    _check_st(g, s, t)
    _check_rk(r, kappa)
    usage: Counter = Counter()
    paths = []
    for _ in range(kappa):
        p = _least_increment_path(g, s, t, usage, r)
        usage.update(path_edges(p))
        paths.append(p)
    _, shared = count_shared_edges(paths, r)
    return UumvSolution(tuple(paths), shared, None, r, kappa, "greedy")
