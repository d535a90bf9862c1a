"""Many pairwise disjoint s-t cuts, each with few edges, from balls along a geodesic.

Centres sit on the canonical s-t path at BFS levels ``i * floor(50 delta)``;
each cut is the ball of radius ``floor(12 delta)`` around its centre.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import _iv, _log2, _lower, _upper
from .graph import (
    DomainError,
    Graph,
    ball,
    bfs_distances,
    canonical_shortest_path,
    cut_edge_set,
    norm_edge,
)
from .hyperbolicity import resolve_delta
from .vulnerability import ExcludedDegree, excluded_max_degree


@dataclass(frozen=True)
class BallCut:
    center: int
    level: int
    members: frozenset
    cut_edges: frozenset
    cut_nodes: frozenset          # members with a neighbour outside


@dataclass(frozen=True)
class CutFamily:
    s: int
    t: int
    cuts: tuple[BallCut, ...]
    delta: Fraction
    delta_source: str
    degree: ExcludedDegree
    level_stride: int
    ball_radius: int
    distance: int
    threshold: Fraction           # 48 delta + 8 delta log2 n (upper enclosure)
    guaranteed_count: int
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def size_bound(self) -> int:
        return self.degree.d ** (self.ball_radius + 1)


def _make_cut(g: Graph, center: int, level: int, radius: int) -> BallCut:
    members = ball(g, center, radius)
    edges = cut_edge_set(g, members)
    inner = frozenset(u for u in members if any(w not in members for w in g.adj[u]))
    return BallCut(center, level, members, edges, inner)


def disjoint_cut_family(g: Graph, s: int, t: int, delta=None, d: Optional[int] = None) -> CutFamily:
    if s == t:
        raise DomainError("s and t must differ")
    choice = resolve_delta(g, delta)
    dl = choice.value
    n = g.n
    dist = bfs_distances(g, s)
    D = dist[t]
    log_term = 8 * _iv(dl) * _log2(_iv(n))
    threshold = 48 * _iv(dl) + log_term
    if not _upper(threshold) < D:
        raise DomainError(
            f"dist(s,t) = {D} <= 48*delta + 8*delta*log2(n) = {float(_upper(threshold)):.4f} "
            f"(delta={dl}, n={n})")
    degree = excluded_max_degree(g, s, t, dl, d)
    stride = int(50 * dl)
    radius = int(12 * dl)
    # i = 1 .. floor((D - 8 delta log2 n) / (50 delta))
    count = math.floor(_lower((_iv(D) - log_term) / (50 * _iv(dl))))
    path = canonical_shortest_path(g, s, t)
    cuts = []
    for i in range(1, count + 1):
        level = i * stride
        cuts.append(_make_cut(g, path[level], level, radius))
    diagnostics = {
        "boundary_product": [degree.d * _inner_sphere(g, c.center, radius) for c in cuts],
    }
    return CutFamily(s, t, tuple(cuts), dl, choice.source, degree, stride, radius, D,
                     _upper(threshold), count, diagnostics)


def _inner_sphere(g: Graph, center: int, radius: int) -> int:
    """Size of the boundary of ``B(center, radius - 1)``, i.e. nodes at distance exactly ``radius``."""
    return sum(1 for x in bfs_distances(g, center) if x == radius)


def _separates(g: Graph, s: int, t: int, removed: frozenset) -> bool:
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen and norm_edge(u, w) not in removed:
                if w == t:
                    return False
                seen.add(w)
                queue.append(w)
    return True


@dataclass(frozen=True)
class CutCertificate:
    separation: tuple[bool, ...]
    endpoints_outside: tuple[bool, ...]
    disjoint: tuple[bool, ...]        # per cut: no shared node or edge with any other cut
    size_ok: tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return all(self.separation) and all(self.endpoints_outside) and all(self.disjoint) \
            and all(self.size_ok)


def certify_cut_family(g: Graph, fam: CutFamily) -> CutCertificate:
    """Recheck every invariant from scratch, without trusting stored cut edges."""
    sep, outside, disjoint, size_ok = [], [], [], []
    fresh = [cut_edge_set(g, c.members) for c in fam.cuts]
    inner = [frozenset(u for e in edges for u in e if u in c.members)
             for c, edges in zip(fam.cuts, fresh)]
    for i, c in enumerate(fam.cuts):
        sep.append(fresh[i] == c.cut_edges and _separates(g, fam.s, fam.t, fresh[i]))
        outside.append(fam.s not in c.members and fam.t not in c.members)
        ok = True
        for j in range(len(fam.cuts)):
            if i != j and (inner[i] & inner[j] or fresh[i] & fresh[j]):
                ok = False
        disjoint.append(ok)
        size_ok.append(len(fresh[i]) <= fam.size_bound)
    return CutCertificate(tuple(sep), tuple(outside), tuple(disjoint), tuple(size_ok))
