"""Gromov hyperbolicity via the four-point condition.

For four nodes the three pairing sums are sorted ``S <= M <= L`` and the slack
is ``rho = (L - M) / 2``; delta is the maximum slack over all quadruples.
Every value here is a multiple of 1/2, so results carry ``delta_halves``
(an integer) and expose ``delta`` as a :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Optional

import numpy as np

from .graph import DomainError, Graph, bfs_distances, diameter_pair

DEFAULT_EXACT_CAP = 400
DEFAULT_APPROX_CAP = 1000
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class HyperbolicityResult:
    delta_halves: int
    witness_quadruple: tuple[int, ...]
    is_exact: bool

    @property
    def delta(self) -> Fraction:
        return Fraction(self.delta_halves, 2)

    @property
    def effective_delta(self) -> Fraction:
        return effective_delta(self)


def effective_delta(result: HyperbolicityResult | Fraction | int) -> Fraction:
    """max(delta, 1/2): trees are treated as 1/2-hyperbolic to keep 1/delta finite."""
    delta = result.delta if isinstance(result, HyperbolicityResult) else Fraction(result)
    return max(delta, HALF)


def rho_of_quadruple(d01: int, d23: int, d02: int, d13: int, d03: int, d12: int) -> Fraction:
    """Four-point slack from the six pairwise distances of ``u0..u3``."""
    sums = sorted((d01 + d23, d02 + d13, d03 + d12))
    return Fraction(sums[2] - sums[1], 2)


def distance_matrix(g: Graph) -> np.ndarray:
    return np.array([bfs_distances(g, u) for u in range(g.n)], dtype=np.int32)


def _is_tree(g: Graph) -> bool:
    return g.m == g.n - 1


@lru_cache(maxsize=None)
def _upper_mask(size: int) -> np.ndarray:
    return np.triu(np.ones((size, size), dtype=bool), k=1)


def _scan_block(D: np.ndarray, i_values) -> tuple[int, tuple[int, ...]]:
    """Best (2*rho, quadruple) for quadruples i<j<k<l with i in ``i_values``.

    Ties keep the lexicographically smallest quadruple: i and j are visited in
    increasing order and argmax over the row-major (k, l) triangle returns the
    first maximiser.
    """
    n = D.shape[0]
    best_val, best_quad = -1, ()
    for i in i_values:
        for j in range(i + 1, n - 2):
            lo = j + 1
            sub = D[lo:, lo:]
            s1 = D[i, j] + sub
            s2 = D[i, lo:][:, None] + D[j, lo:][None, :]
            s3 = D[j, lo:][:, None] + D[i, lo:][None, :]
            big = np.maximum(np.maximum(s1, s2), s3)
            small = np.minimum(np.minimum(s1, s2), s3)
            twice_rho = big - (s1 + s2 + s3 - big - small)
            size = n - lo
            vals = np.where(_upper_mask(size), twice_rho, -1)
            flat = int(np.argmax(vals))
            val = int(vals.flat[flat])
            if val > best_val:
                k, l = divmod(flat, size)
                best_val, best_quad = val, (i, j, lo + k, lo + l)
    return best_val, best_quad


def delta_exact(g: Graph, cap: int = DEFAULT_EXACT_CAP, workers: int = 1) -> HyperbolicityResult:
    """Exact delta by scanning every 4-subset of distinct nodes.

    Trees short-circuit to 0 with witness (0, 1, 2, 3), which is what the full
    scan returns for them. ``workers > 1`` splits the outer index across
    threads; the reduction is schedule independent.
    """
    n = g.n
    if n < 4:
        return HyperbolicityResult(0, tuple(range(n)), True)
    if _is_tree(g):
        return HyperbolicityResult(0, (0, 1, 2, 3), True)
    if n > cap:
        raise DomainError(
            f"n={n} exceeds the exact-delta cap {cap}; use delta_two_approx or raise the cap")
    D = distance_matrix(g)
    outer = list(range(n - 3))
    if workers <= 1:
        parts = [_scan_block(D, outer)]
    else:
        chunks = [outer[w::workers] for w in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _scan_block(D, c), chunks))
    best_val, best_quad = max(parts, key=lambda bq: (bq[0], tuple(-x for x in bq[1])))
    return HyperbolicityResult(best_val, best_quad, True)


def delta_two_approx(g: Graph) -> HyperbolicityResult:
    """Maximum slack over quadruples containing one fixed base node.

    The base is the smaller endpoint of the diameter pair. With the base fixed
    this is the Gromov-product constant at that base, so the returned value v
    satisfies ``v <= delta <= 2 v``.
    """
    n = g.n
    if n < 4:
        return HyperbolicityResult(0, tuple(range(n)), False)
    base = diameter_pair(g)[0]
    D = distance_matrix(g)
    others = [u for u in range(n) if u != base]
    best_val, best_quad = -1, ()
    db = D[base]
    for a_idx, x in enumerate(others[:-2]):
        rest = np.array(others[a_idx + 1:])
        sub = D[np.ix_(rest, rest)]
        s1 = db[x] + sub
        s2 = db[rest][:, None] + D[x, rest][None, :]
        s3 = D[x, rest][:, None] + db[rest][None, :]
        big = np.maximum(np.maximum(s1, s2), s3)
        small = np.minimum(np.minimum(s1, s2), s3)
        twice_rho = big - (s1 + s2 + s3 - big - small)
        size = len(rest)
        vals = np.where(_upper_mask(size), twice_rho, -1)
        flat = int(np.argmax(vals))
        val = int(vals.flat[flat])
        if val > best_val:
            y, z = divmod(flat, size)
            best_val = val
            best_quad = tuple(sorted((base, x, int(rest[y]), int(rest[z]))))
    return HyperbolicityResult(max(best_val, 0), best_quad, False)


@dataclass(frozen=True)
class DeltaChoice:
    """The delta handed to a construction, and where it came from."""

    value: Fraction            # effective delta actually used (>= 1/2)
    source: str                # "override" | "exact" | "two-approx"
    raw: Optional[Fraction]    # computed delta before the 1/2 floor, if computed


def resolve_delta(g: Graph, override=None, exact_cap: int = DEFAULT_EXACT_CAP,
                  approx_cap: int = DEFAULT_APPROX_CAP) -> DeltaChoice:
    """Pick delta for downstream bounds.

    An override wins. Otherwise exact when affordable, else twice the 2-approx
    value (an upper bound on delta), else fail asking for an override.
    """
    if override is not None:
        value = Fraction(override)
        if value < 0:
            raise DomainError("delta override must be non-negative")
        return DeltaChoice(effective_delta(value), "override", value)
    if g.n <= exact_cap or _is_tree(g):
        res = delta_exact(g, cap=exact_cap)
        return DeltaChoice(res.effective_delta, "exact", res.delta)
    if g.n <= approx_cap:
        res = delta_two_approx(g)
        return DeltaChoice(effective_delta(2 * res.delta), "two-approx", 2 * res.delta)
    raise DomainError(f"n={g.n} too large to compute delta; pass an explicit delta override")
