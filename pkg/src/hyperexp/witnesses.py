"""Nested families of node-expansion witnesses between two nodes.

The search follows the constructive argument for hyperbolic graphs:

* ball sweep: balls ``B(anchor, r)`` for ``r <= Delta/2`` around whichever of
  ``p``, ``q`` has the smaller half-ball;
* cylinder sweep: for each cylinder radius between ``alpha_1 Delta`` and half of
  it, delete the nodes at exactly that distance from the middle third of the
  ``p``-``q`` geodesic and grow balls around the anchor in what is left.

Every candidate is measured in the original graph, and the longest strictly
nested chain of qualifying sets sharing one anchor is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import alpha1_radius_interval, required_family_size, theorem1_terms
from .graph import (
    UNREACHABLE,
    DomainError,
    Graph,
    bfs_distances,
    bfs_levels,
    canonical_shortest_path,
    multi_source_bfs,
    node_expansion,
    remove_nodes,
)
from .hyperbolicity import resolve_delta


@dataclass(frozen=True)
class Cylinder:
    segment: tuple[int, ...]
    radius: int
    nodes: frozenset


def geodesic_thirds(g: Graph, p: int, q: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The canonical ``p``-``q`` path and its middle segment ``p'..q'``.

    ``dist(p, p') = dist(p', q') = floor(Delta/3)``; the remainder goes to the
    ``q`` side.
    """
    path = canonical_shortest_path(g, p, q)
    k = (len(path) - 1) // 3
    return path, path[k:2 * k + 1]


def cylinder(g: Graph, p: int, q: int, radius: int) -> Cylinder:
    """Nodes whose distance to the middle third of the ``p``-``q`` geodesic is exactly ``radius``."""
    path, segment = geodesic_thirds(g, p, q)
    Delta = len(path) - 1
    if Delta <= 6:
        raise DomainError(f"cylinder needs dist(p,q) > 6, got {Delta}")
    if not (radius >= 1 and 4 * radius < Delta):
        raise DomainError(f"cylinder radius must satisfy 1 <= radius < Delta/4 = {Delta / 4}")
    dist = multi_source_bfs(g, segment)
    return Cylinder(segment, radius, frozenset(u for u, d in enumerate(dist) if d == radius))


@dataclass(frozen=True)
class BallStep:
    radius: int
    size: int
    boundary: int


def ball_profile(g: Graph, dist: Sequence[Optional[int]], limit: Optional[int]) -> list[BallStep]:
    """Size and G-boundary of ``{v : dist[v] <= r}`` for ``r = 0..limit``.

    ``dist`` may come from a subgraph; the boundary is always counted in ``g``.
    Stops early once the ball stops growing (``limit=None`` runs to saturation).
    """
    levels = bfs_levels(dist)
    inside = [False] * g.n
    touch = [0] * g.n
    bcount = 0
    size = 0
    steps = []
    top = len(levels) - 1 if limit is None else min(limit, len(levels) - 1)
    for r in range(top + 1):
        for v in levels[r]:
            if touch[v]:
                bcount -= 1
            inside[v] = True
            size += 1
            for w in g.adj[v]:
                touch[w] += 1
                if touch[w] == 1 and not inside[w]:
                    bcount += 1
        steps.append(BallStep(r, size, bcount))
    return steps


def mean_ball_expansion(g: Graph, p: int, j: int) -> Fraction:
    """Average of ``h_G(B(p, l))`` over ``l < j``: the quantity driving ball-growth estimates."""
    if j < 1:
        raise DomainError("need j >= 1")
    steps = ball_profile(g, bfs_distances(g, p), j - 1)
    return sum((Fraction(s.boundary, s.size) for s in steps), Fraction(0)) / j


@dataclass
class _Candidate:
    anchor: int
    origin: str
    size: int
    boundary: int
    mask: int
    nodes: tuple[int, ...]


def _collect(g: Graph, dist, limit, anchor: int, origin: str, threshold: Fraction,
             out: list) -> int:
    levels = bfs_levels(dist)
    half = g.n // 2
    mask = 0
    hits = 0
    prev = 0
    for step in ball_profile(g, dist, limit):
        mask |= sum(1 << v for v in levels[step.radius])
        if step.size == prev:
            break
        prev = step.size
        if step.size <= half and Fraction(step.boundary, step.size) <= threshold:
            nodes = tuple(v for v, d in enumerate(dist) if d is not UNREACHABLE and d <= step.radius)
            out.append(_Candidate(anchor, f"{origin}:r={step.radius}", step.size,
                                  step.boundary, mask, nodes))
            hits += 1
    return hits


def _longest_chain(cands: list[_Candidate]) -> list[_Candidate]:
    seen = set()
    uniq = []
    for c in sorted(cands, key=lambda c: (c.size, c.nodes)):
        if c.mask not in seen:
            seen.add(c.mask)
            uniq.append(c)
    best = [1] * len(uniq)
    pred = [-1] * len(uniq)
    for i, ci in enumerate(uniq):
        not_i = ~ci.mask
        for j in range(i):
            cj = uniq[j]
            if cj.size < ci.size and best[j] + 1 > best[i] and not (cj.mask & not_i):
                best[i] = best[j] + 1
                pred[i] = j
    if not uniq:
        return []
    end = max(range(len(uniq)), key=lambda i: (best[i], -i))
    chain = []
    while end != -1:
        chain.append(uniq[end])
        end = pred[end]
    chain.reverse()
    return chain


@dataclass(frozen=True)
class WitnessParams:
    Delta: int
    mu: Fraction
    delta: Fraction
    delta_source: str
    d: int
    n: int
    cylinder_radii: tuple[int, ...]
    alpha1_Delta: Fraction


@dataclass(frozen=True)
class WitnessFamily:
    anchor: int
    subsets: tuple[frozenset, ...]
    expansions: tuple[Fraction, ...]
    bound: Fraction
    t_required: int
    params: WitnessParams
    origins: tuple[str, ...] = ()
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def too_short(self) -> bool:
        return len(self.subsets) < self.t_required

    def __len__(self) -> int:
        return len(self.subsets)


def _floor(x: Fraction) -> int:
    return math.floor(x)


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def nested_witness_family(g: Graph, p: int, q: int, mu, delta=None, d: Optional[int] = None,
                          *, bound_cap: Optional[Fraction] = None) -> WitnessFamily:
    """Nested witnesses of small node expansion, all containing ``p`` or all containing ``q``.

    ``delta`` and ``d`` override the computed hyperbolicity and maximum degree
    (``d`` is floored at 2). ``bound_cap`` tightens the qualifying threshold
    further; it is how per-segment families get the segmented bound.
    """
    if p == q:
        raise DomainError("p and q must differ")
    mu = Fraction(mu)
    if not 0 < mu < 1:
        raise DomainError(f"mu must lie in (0, 1), got {mu}")
    choice = resolve_delta(g, delta)
    d_used = max(d if d is not None else g.max_degree, 2)
    n = g.n
    path, segment = geodesic_thirds(g, p, q)
    Delta = len(path) - 1
    terms = theorem1_terms(Delta, n, d_used, choice.value, mu)
    threshold = terms.bound if bound_cap is None else min(terms.bound, Fraction(bound_cap))
    t = required_family_size(Delta, d_used, mu)
    half = n // 2
    bfs_runs = 1

    # ball sweep
    dp, dq = bfs_distances(g, p), bfs_distances(g, q)
    bfs_runs += 2
    R = Delta // 2
    size_p = sum(1 for x in dp if x <= R)
    size_q = sum(1 for x in dq if x <= R)
    ball_anchor = p if size_p <= size_q else q
    cands: list[_Candidate] = []
    _collect(g, dp if ball_anchor == p else dq, R, ball_anchor, "ball", threshold, cands)
    ball_steps = ball_profile(g, dp if ball_anchor == p else dq, R)
    part1_hits = sum(1 for s in ball_steps
                     if s.size <= half and Fraction(s.boundary, s.size) <= terms.ball_term)

    # cylinder sweep
    lo, hi = alpha1_radius_interval(Delta, d_used, mu)
    radii: list[int] = []
    if Delta > 6:
        top, bottom = _floor(lo), _ceil(hi / 2)
        radii = [rho for rho in range(top, bottom - 1, -1) if rho >= 1 and 4 * rho < Delta]
    sweep = []
    if radii:
        seg_dist = multi_source_bfs(g, segment)
        bfs_runs += 1
        for rho in radii:
            removed = frozenset(u for u, x in enumerate(seg_dist) if x == rho)
            sub = remove_nodes(g, removed)
            dpc, dqc = sub.distances(p), sub.distances(q)
            bfs_runs += 2
            dist_pq = dpc[q]
            if dist_pq is UNREACHABLE:
                limit = None
                sp = sum(1 for x in dpc if x is not UNREACHABLE)
                sq = sum(1 for x in dqc if x is not UNREACHABLE)
            else:
                limit = dist_pq // 2
                sp = sum(1 for x in dpc if x is not UNREACHABLE and x <= limit)
                sq = sum(1 for x in dqc if x is not UNREACHABLE and x <= limit)
            anchor = p if sp <= sq else q
            hits = _collect(g, dpc if anchor == p else dqc, limit, anchor,
                            f"cylinder{rho}", threshold, cands)
            sweep.append({"radius": rho, "removed": len(removed), "dist_without": dist_pq,
                          "anchor": anchor, "hits": hits})

    by_anchor = {}
    for a in (p, q):
        by_anchor[a] = _longest_chain([c for c in cands if c.anchor == a])
    anchor = p if len(by_anchor[p]) >= len(by_anchor[q]) else q
    if not by_anchor[p] and not by_anchor[q]:
        anchor = ball_anchor
    chain = by_anchor[anchor]

    subsets = tuple(frozenset(c.nodes) for c in chain)
    expansions = tuple(Fraction(c.boundary, c.size) for c in chain)
    params = WitnessParams(Delta, mu, choice.value, choice.source, d_used, n, tuple(radii),
                           hi)
    diagnostics = {
        "ball_anchor": ball_anchor,
        "ball_hits": part1_hits,
        "ball_term": terms.ball_term,
        "cylinder_term": terms.cylinder_term,
        "cylinder_sweep": sweep,
        "candidates": len(cands),
        "bfs_runs": bfs_runs,
    }
    return WitnessFamily(anchor, subsets, expansions, threshold, t, params,
                         tuple(c.origin for c in chain), diagnostics)


def check_family(g: Graph, fam: WitnessFamily) -> list[str]:
    """Re-derive every family invariant from scratch; returns the violations."""
    problems = []
    for i, s in enumerate(fam.subsets):
        if fam.anchor not in s:
            problems.append(f"subset {i} misses anchor {fam.anchor}")
        if len(s) > g.n // 2:
            problems.append(f"subset {i} has {len(s)} > n/2 nodes")
        h = node_expansion(g, s)
        if h != fam.expansions[i]:
            problems.append(f"subset {i}: stored expansion {fam.expansions[i]} != {h}")
        if h > fam.bound:
            problems.append(f"subset {i}: expansion {h} exceeds bound {fam.bound}")
        if i and not fam.subsets[i - 1] < s:
            problems.append(f"subset {i - 1} is not a proper subset of subset {i}")
    return problems
