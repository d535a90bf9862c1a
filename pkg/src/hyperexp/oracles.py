"""Brute-force ground truth for tiny graphs.

Everything here works from raw definitions and only borrows the graph
container; none of the constructive modules are imported. Each oracle has a
hard size guard so a mistaken call fails loudly instead of running for hours.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction
from typing import Mapping, Optional

from .graph import DomainError, Graph, norm_edge

MAX_EXPANSION_N = 20
MAX_CUT_N = 16
MAX_EHSSC_N = 12
MAX_CUT_FAMILY = 10_000


def _guard(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise DomainError(f"{what} oracle is limited to n <= {limit}, got n={n}")


def all_pairs_distances(g: Graph) -> list[list[float]]:
    """Floyd-Warshall on unit weights."""
    n = g.n
    d = [[math.inf] * n for _ in range(n)]
    for u in range(n):
        d[u][u] = 0
    for u, v in g.edges:
        d[u][v] = d[v][u] = 1
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == math.inf:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def brute_delta(g: Graph) -> Fraction:
    """Maximum four-point slack over every 4-subset (0 when n < 4)."""
    d = all_pairs_distances(g)
    best = 0
    for a, b, c, e in itertools.combinations(range(g.n), 4):
        sums = sorted((d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]))
        best = max(best, sums[2] - sums[1])
    return Fraction(int(best), 2)


def _neighbour_masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[u]) for u in range(g.n)]


def _members(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def brute_min_node_expansion(g: Graph) -> tuple[frozenset, Fraction]:
    """Exact ``min |boundary(S)| / |S|`` over ``1 <= |S| <= n/2``; ties -> lexicographically smallest S."""
    n = g.n
    _guard(n, MAX_EXPANSION_N, "node expansion")
    if n < 2:
        raise DomainError("need n >= 2")
    nb = _neighbour_masks(g)
    half = n // 2
    union = [0] * (1 << n)
    best: Optional[tuple[Fraction, tuple[int, ...]]] = None
    for mask in range(1, 1 << n):
        low = mask & -mask
        union[mask] = union[mask ^ low] | nb[low.bit_length() - 1]
        size = bin(mask).count("1")
        if size > half:
            continue
        ratio = Fraction(bin(union[mask] & ~mask).count("1"), size)
        if best is None or ratio < best[0] or (ratio == best[0] and _members(mask) < best[1]):
            best = (ratio, _members(mask))
    return frozenset(best[1]), best[0]


def _check_st(g: Graph, s: int, t: int) -> None:
    if not (0 <= s < g.n and 0 <= t < g.n) or s == t:
        raise DomainError("need distinct s and t inside the graph")


def _source_sides(g: Graph, s: int, t: int):
    others = [u for u in range(g.n) if u not in (s, t)]
    for bits in range(1 << len(others)):
        side = {s}
        side.update(others[i] for i in range(len(others)) if bits >> i & 1)
        yield side


def enumerate_size_constrained_cuts(g: Graph, s: int, t: int, k: int) -> list[frozenset]:
    """Distinct cut-edge sets of all S with s in S, t not in S and at most ``k`` cut edges."""
    _guard(g.n, MAX_CUT_N, "cut enumeration")
    _check_st(g, s, t)
    found = set()
    for side in _source_sides(g, s, t):
        cut = frozenset(norm_edge(u, v) for u, v in g.edges if (u in side) != (v in side))
        if len(cut) <= k:
            found.add(cut)
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def _min_hitting_set(family: list[frozenset]) -> frozenset:
    best: list = [None]

    def search(chosen: frozenset) -> None:
        if best[0] is not None and len(chosen) >= len(best[0]):
            return
        open_sets = [c for c in family if not (c & chosen)]
        if not open_sets:
            best[0] = chosen
            return
        # any open set needs one more edge, so stop if that cannot beat the incumbent
        if best[0] is not None and len(chosen) + 1 >= len(best[0]):
            return
        pivot = min(open_sets, key=lambda c: (len(c), sorted(c)))
        for e in sorted(pivot):
            search(chosen | {e})

    search(frozenset())
    return best[0]


def brute_ehssc(g: Graph, s: int, t: int, k: int) -> tuple[frozenset, int]:
    """Smallest edge set meeting every s-t cut with at most ``k`` cut edges."""
    _guard(g.n, MAX_EHSSC_N, "EHSSC")
    cuts = enumerate_size_constrained_cuts(g, s, t, k)
    if len(cuts) > MAX_CUT_FAMILY:
        raise DomainError(f"{len(cuts)} cuts exceed the oracle limit {MAX_CUT_FAMILY}")
    hit = _min_hitting_set(cuts)
    return hit, len(hit)


def brute_uumv(g: Graph, s: int, t: int, r: int, kappa: int) -> int:
    """Optimum shared-edge count via the hitting-set characterisation."""
    if not 0 < r < kappa:
        raise DomainError("need 0 < r < kappa")
    return brute_ehssc(g, s, t, -(-kappa // r) - 1)[1]


def simple_paths(g: Graph, s: int, t: int, cap: int = 5000) -> list[tuple[int, ...]]:
    """All simple s-t paths in DFS order (neighbours by id)."""
    out: list[tuple[int, ...]] = []
    stack = [s]
    on_path = {s}

    def dfs(u: int) -> None:
        if u == t:
            out.append(tuple(stack))
            if len(out) > cap:
                raise DomainError(f"more than {cap} simple s-t paths")
            return
        for w in g.adj[u]:
            if w not in on_path:
                on_path.add(w)
                stack.append(w)
                dfs(w)
                stack.pop()
                on_path.discard(w)

    dfs(s)
    return out


def shared_count(paths, r: int) -> int:
    usage = Counter(norm_edge(a, b) for p in paths for a, b in zip(p, p[1:]))
    return sum(1 for c in usage.values() if c > r)


def brute_uumv_direct(g: Graph, s: int, t: int, r: int, kappa: int,
                      path_cap: int = 400) -> int:
    """Optimum shared-edge count by trying every multiset of ``kappa`` simple paths."""
    _check_st(g, s, t)
    if not 0 < r < kappa:
        raise DomainError("need 0 < r < kappa")
    paths = simple_paths(g, s, t, path_cap)
    return min(shared_count(combo, r)
               for combo in itertools.combinations_with_replacement(paths, kappa))


def brute_min_cut(g: Graph, cap: Mapping[tuple[int, int], float], s: int, t: int) -> float:
    """Minimum capacity over every s-t bipartition; ``math.inf`` if every cut is infinite.

    ``cap`` maps normalised edges to capacities; missing edges default to 1.
    """
    _guard(g.n, MAX_CUT_N, "min cut")
    _check_st(g, s, t)
    best = math.inf
    for side in _source_sides(g, s, t):
        total = 0
        for u, v in g.edges:
            if (u in side) != (v in side):
                total += cap.get((u, v), 1)
                if total >= best:
                    break
        best = min(best, total)
    return best
