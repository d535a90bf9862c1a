"""Several witness families along one geodesic with limited mutual overlap.

The canonical p-q path is cut into ``tau`` segments of length ``floor(Delta/tau)``
(the last one takes the remainder). Each segment gets its own nested family,
and the families are grouped by segment parity and by which end they are
anchored at. The largest group is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .bounds import TauCheck, theorem3_bound, validate_tau
from .graph import DomainError, Graph, canonical_shortest_path
from .hyperbolicity import resolve_delta
from .witnesses import WitnessFamily, nested_witness_family

GROUP_ORDER = (("even", "left"), ("even", "right"), ("odd", "left"), ("odd", "right"))


@dataclass(frozen=True)
class OverlapFamilySet:
    families: tuple[WitnessFamily, ...]
    segment_indices: tuple[int, ...]        # 1-based segment number of each family
    Delta: int
    tau: int
    mu: Fraction
    delta: Fraction
    delta_source: str
    d: int
    segment_anchors: tuple[int, ...]        # p_1 = p, ..., p_{tau+1} = q
    group: tuple[str, str]
    group_sizes: dict
    tau_check: TauCheck
    forced: bool
    segment_bound: Fraction

    @property
    def shortfall(self) -> bool:
        return len(self.families) < self.tau // 4 or any(f.too_short for f in self.families)


def verify_limited_overlap(a, b, Delta: int, tau: int) -> bool:
    """Disjoint, or each set keeps at least ``floor(Delta / (2 tau))`` nodes of its own."""
    a, b = frozenset(a), frozenset(b)
    if not a & b:
        return True
    need = Delta // (2 * tau)
    return len(a - b) >= need and len(b - a) >= need


def overlap_families(g: Graph, p: int, q: int, tau: int, mu, delta=None,
                     d: Optional[int] = None, *, force: bool = False) -> OverlapFamilySet:
    """``force=True`` runs even when ``tau`` violates its constraints (reported in ``tau_check``)."""
    mu = Fraction(mu)
    if p == q:
        raise DomainError("p and q must differ")
    path = canonical_shortest_path(g, p, q)
    Delta = len(path) - 1
    choice = resolve_delta(g, delta)
    d_used = max(d if d is not None else g.max_degree, 2)
    check = validate_tau(Delta, tau, choice.value, d_used, mu)
    if not check and not force:
        raise DomainError(f"tau={tau} rejected for Delta={Delta}: {check.reason}")
    step = Delta // tau
    if step < 1:
        raise DomainError(f"tau={tau} exceeds Delta={Delta}")
    anchors = tuple(path[i * step] for i in range(tau)) + (q,)
    bound = theorem3_bound(Delta, tau, g.n, d_used, choice.value, mu)
    groups: dict[tuple[str, str], list[tuple[int, WitnessFamily]]] = {k: [] for k in GROUP_ORDER}
    for i in range(1, tau + 1):
        left, right = anchors[i - 1], anchors[i]
        fam = nested_witness_family(g, left, right, mu, choice.value, d_used, bound_cap=bound)
        if not fam.subsets:
            continue
        hand = "left" if fam.anchor == left else "right"
        groups[("even" if i % 2 == 0 else "odd", hand)].append((i, fam))
    best = max(GROUP_ORDER, key=lambda k: (len(groups[k]), -GROUP_ORDER.index(k)))
    chosen = groups[best]
    return OverlapFamilySet(
        tuple(f for _, f in chosen), tuple(i for i, _ in chosen), Delta, tau, mu,
        choice.value, choice.source, d_used, anchors, best,
        {f"{k[0]}-{k[1]}": len(v) for k, v in groups.items()}, check, force and not check, bound)


def overlap_matrix(fs: OverlapFamilySet) -> list[dict]:
    """Every cross-family subset pair with its verdict."""
    rows = []
    for (i, fa), (j, fb) in combinations(enumerate(fs.families), 2):
        for a_idx, a in enumerate(fa.subsets):
            for b_idx, b in enumerate(fb.subsets):
                rows.append({"families": (i, j), "subsets": (a_idx, b_idx),
                             "ok": verify_limited_overlap(a, b, fs.Delta, fs.tau)})
    return rows
