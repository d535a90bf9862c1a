from fractions import Fraction

import pytest
from hypothesis import given

from hyperexp import generators as gen
from hyperexp.graph import DomainError, bfs_distances
from hyperexp.hyperbolicity import (
    delta_exact,
    delta_two_approx,
    effective_delta,
    resolve_delta,
    rho_of_quadruple,
)
from hyperexp.oracles import brute_delta

from conftest import connected_graphs


@pytest.mark.parametrize("g, expected", [
    (gen.path(6), 0),
    (gen.star(5), 0),
    (gen.complete(6), 0),
    (gen.cycle(4), 1),
    (gen.cycle(6), 1),
    (gen.cycle(8), 2),
    (gen.cycle(12), 3),
])
def test_known_values_agree_with_oracle(g, expected):
    assert brute_delta(g) == expected
    assert delta_exact(g).delta == expected


def test_witness_quadruple_attains_the_maximum():
    g = gen.grid(3, 4)
    res = delta_exact(g)
    a, b, c, d = res.witness_quadruple
    dist = {u: bfs_distances(g, u) for u in (a, b, c)}
    rho = rho_of_quadruple(dist[a][b], dist[c][d], dist[a][c], dist[b][d], dist[a][d], dist[b][c])
    assert rho == res.delta == brute_delta(g)


def test_tree_short_circuit_witness():
    res = delta_exact(gen.balanced_tree(2, 3))
    assert res.delta == 0 and res.witness_quadruple == (0, 1, 2, 3)


def test_lexicographically_smallest_witness_on_c4():
    assert delta_exact(gen.cycle(4)).witness_quadruple == (0, 1, 2, 3)


@given(connected_graphs(min_n=4, max_n=10))
def test_exact_matches_oracle(g):
    assert delta_exact(g).delta == brute_delta(g)


@given(connected_graphs(min_n=4, max_n=10))
def test_threaded_scan_equals_serial_scan(g):
    assert delta_exact(g, workers=3) == delta_exact(g)


@given(connected_graphs(min_n=4, max_n=10))
def test_two_approx_sandwich(g):
    v = delta_two_approx(g).delta
    d = brute_delta(g)
    assert v <= d <= 2 * v


def test_effective_delta_floor():
    assert effective_delta(0) == Fraction(1, 2)
    assert effective_delta(Fraction(3, 2)) == Fraction(3, 2)
    assert delta_exact(gen.path(5)).effective_delta == Fraction(1, 2)


def test_exact_cap_and_resolution_policy():
    g = gen.cycle(30)
    with pytest.raises(DomainError, match="cap"):
        delta_exact(g, cap=20)
    assert resolve_delta(g).source == "exact"
    approx = resolve_delta(g, exact_cap=10)
    assert approx.source == "two-approx" and approx.raw >= brute_delta(g)
    with pytest.raises(DomainError, match="override"):
        resolve_delta(g, exact_cap=10, approx_cap=20)
    forced = resolve_delta(g, override=0)
    assert forced.source == "override" and forced.value == Fraction(1, 2)
