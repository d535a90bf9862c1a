"""Small-set expansion search on regular graphs.

Given ``epsilon`` and ``zeta``, look for a node set of at most ``zeta * n``
nodes whose normalised expansion ``|cut(S)| / vol(S)`` is at most
``epsilon``. Candidates are tried in this order:

1. balls ``B(p, r)`` for ``r <= Delta/3 - cylinder radius``;
2. BFS levels of ``p`` in the graph with the cylinder removed, scanned in
   blocks of ``eta = ceil((8/epsilon) ln n)`` levels (when ``p`` and ``q`` stay
   connected there);
3. the largest of those balls when the cylinder disconnects ``p`` from ``q``;
4. greedy growth from ``p``, adding the node with most neighbours inside.

Step 4 goes beyond the geometric construction and is reported as its own branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import alpha1_radius_interval
from .graph import (
    UNREACHABLE,
    DomainError,
    Graph,
    ball,
    bfs_distances,
    bfs_levels,
    cut_edge_set,
    multi_source_bfs,
    node_expansion,
    remove_nodes,
)
from .hyperbolicity import resolve_delta
from .witnesses import geodesic_thirds

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SseSolution:
    nodes: frozenset
    phi: Fraction
    h: Fraction
    branch: str          # ball | level-block | disconnected-ball | greedy-growth | shortfall
    shortfall: bool
    params: dict
    window: dict
    diagnostics: dict = field(default_factory=dict, compare=False)


def normalized_cut(g: Graph, s: frozenset, d: int) -> Fraction:
    """``|cut(S)| / (d |S|)``, the normalised expansion of S in a d-regular graph."""
    return Fraction(len(cut_edge_set(g, s)), d * len(s))


def log_floor(n: int, d: int) -> int:
    """Largest k with d**k <= n."""
    k = 0
    while d ** (k + 1) <= n:
        k += 1
    return k


def _pick_pair(g: Graph, target: int) -> tuple[int, int, int, bool]:
    """Lexicographically smallest pair at distance ``target``, else the diameter pair."""
    best = (0, 0, -1)
    for p in range(g.n):
        dist = bfs_distances(g, p)
        for q in range(p + 1, g.n):
            if dist[q] == target:
                return p, q, target, False
            if dist[q] > best[2]:
                best = (p, q, dist[q])
    return best[0], best[1], best[2], True


def parameter_window(n: int, d: int, delta: Fraction) -> dict:
    """Whether some rho in (0, 1/3) has d <= 2^(log^(1/3 - rho) n) and delta <= log^rho n."""
    L = math.log2(n)
    if L <= 1:
        return {"exists": False, "rho_low": None, "rho_high": None}
    logL = math.log2(L)
    hi = 1 / 3 - math.log2(math.log2(d)) / logL
    lo = max(math.log2(float(delta)) / logL, 0.0) if delta > 0 else 0.0
    return {"exists": lo < hi, "rho_low": lo, "rho_high": hi}


def sse_solve(g: Graph, epsilon, zeta, delta=None, d: Optional[int] = None) -> SseSolution:
    epsilon, zeta = Fraction(epsilon), Fraction(zeta)
    if not g.is_regular():
        raise DomainError("small-set expansion search needs a regular graph")
    d_reg = g.degree(0)
    d_used = d if d is not None else d_reg
    if d_used < 2:
        raise DomainError(f"need degree >= 2, got {d_used}")
    if not 0 < epsilon <= 1:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
    if not 0 < zeta < HALF:
        raise DomainError(f"zeta must lie in (0, 1/2), got {zeta}")
    n = g.n
    cap = math.floor(zeta * n)
    if cap < 1:
        raise DomainError(f"floor(zeta * n) = {cap}: no nonempty set is small enough")
    choice = resolve_delta(g, delta)

    target = log_floor(n, d_used)
    p, q, Delta, fell_back = _pick_pair(g, target)
    lo, hi = alpha1_radius_interval(Delta, d_used, HALF)
    radius = math.ceil(hi) if Delta > 6 else 0
    if radius and 4 * radius >= Delta:
        radius = 0
    eta = math.ceil(8 * math.log(n) / float(epsilon))
    params = {
        "epsilon": epsilon, "zeta": zeta, "size_cap": cap, "n": n, "d": d_used,
        "d_source": "override" if d is not None else "regular degree",
        "Delta_target": target, "Delta": Delta, "p": p, "q": q, "pair_fallback": fell_back,
        "mu": HALF, "alpha_Delta": hi, "cylinder_radius": radius, "eta": eta,
        "delta": choice.value, "delta_source": choice.source,
    }
    window = parameter_window(n, d_used, choice.value)
    evaluated = []

    def consider(s: frozenset, label: str) -> bool:
        if not 1 <= len(s) <= n // 2:
            return False
        phi = normalized_cut(g, s, d_reg)
        evaluated.append((phi, len(s), label, s))
        return phi <= epsilon and len(s) <= cap

    def done(s: frozenset, branch: str, diag: dict) -> SseSolution:
        phi = normalized_cut(g, s, d_reg)
        return SseSolution(s, phi, node_expansion(g, s), branch, False, params, window, diag)

    diag: dict = {"evaluated": 0}
    top = max(0, Delta // 3 - radius)
    dp = bfs_distances(g, p)
    for r in range(top + 1):
        s = frozenset(v for v, x in enumerate(dp) if x <= r)
        if consider(s, f"ball r={r}"):
            diag["evaluated"] = len(evaluated)
            return done(s, "ball", diag)

    removed: frozenset = frozenset()
    if radius:
        _, segment = geodesic_thirds(g, p, q)
        seg = multi_source_bfs(g, segment)
        removed = frozenset(u for u, x in enumerate(seg) if x == radius)
    dpc = remove_nodes(g, removed).distances(p)
    t_dist = dpc[q]
    diag["cylinder_size"] = len(removed)
    diag["dist_without_cylinder"] = t_dist
    if t_dist is not UNREACHABLE:
        levels = bfs_levels(dpc)[: t_dist // 2 + 1]
        found = []
        blocks = []
        for start in range(0, len(levels), eta):
            hit = None
            for i in range(start, min(start + eta, len(levels))):
                s = frozenset(levels[i])
                if consider(s, f"level {i}"):
                    found.append((len(s), i, s))
                    hit = i if hit is None else hit
            blocks.append({"start": start, "first_hit": hit})
        diag["blocks"] = blocks
        if found:
            found.sort(key=lambda x: (x[0], x[1]))
            diag["evaluated"] = len(evaluated)
            return done(found[0][2], "level-block", diag)
    else:
        s = ball(g, p, top)
        if consider(s, "disconnected ball"):
            diag["evaluated"] = len(evaluated)
            return done(s, "disconnected-ball", diag)

    grown = _greedy_growth(g, p, cap)
    for s in grown:
        if consider(s, f"greedy {len(s)}"):
            diag["evaluated"] = len(evaluated)
            return done(s, "greedy-growth", diag)

    diag["evaluated"] = len(evaluated)
    fitting = [e for e in evaluated if e[1] <= cap]
    phi, _, label, s = min(fitting, key=lambda e: (e[0], e[1], sorted(e[3])))
    diag["best_label"] = label
    return SseSolution(s, phi, node_expansion(g, s), "shortfall", True, params, window, diag)


def _greedy_growth(g: Graph, start: int, cap: int) -> list[frozenset]:
    """Prefixes of a growth order that always adds the outside node with most inside neighbours."""
    inside = {start}
    touch = [0] * g.n
    for w in g.adj[start]:
        touch[w] += 1
    out = [frozenset(inside)]
    while len(inside) < cap:
        frontier = [w for w in range(g.n) if w not in inside and touch[w]]
        if not frontier:
            break
        nxt = max(frontier, key=lambda w: (touch[w], -w))
        inside.add(nxt)
        for w in g.adj[nxt]:
            touch[w] += 1
        out.append(frozenset(inside))
    return out
