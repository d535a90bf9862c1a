from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hyperexp import generators as gen
from hyperexp.graph import Graph

settings.register_profile(
    "repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@st.composite
def connected_graphs(draw, min_n: int = 2, max_n: int = 9, max_extra: int = 12) -> Graph:
    """Random spanning tree (each node k > 0 hangs off an earlier node) plus extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, k - 1)), k) for k in range(1, n)}
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    if pairs:
        edges |= set(draw(st.lists(st.sampled_from(pairs), max_size=max_extra, unique=True)))
    return Graph.from_edges(n, sorted(edges))


def small_suite() -> list[tuple[str, Graph]]:
    """Named graphs with n <= 12 used by the brute-force comparisons."""
    suite = [
        ("P4", gen.path(4)), ("P7", gen.path(7)), ("C5", gen.cycle(5)), ("C8", gen.cycle(8)),
        ("K4", gen.complete(4)), ("K5", gen.complete(5)), ("star5", gen.star(5)),
        ("tree2x2", gen.balanced_tree(2, 2)), ("grid3x3", gen.grid(3, 3)),
        ("grid2x5", gen.grid(2, 5)), ("Q3", gen.hypercube(3)), ("theta226", gen.theta(2, 2, 6)),
        ("theta333", gen.theta(3, 3, 3)), ("trap1", gen.trap_chain(1)),
        ("strip5", gen.triangle_strip(5)), ("cat4x1", gen.caterpillar(4, 1)),
    ]
    for seed in range(6):
        g = gen.erdos_renyi(10, 0.35, seed)
        suite.append((f"er10-{seed}", g))
    return suite


ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        verdict, title = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {title}")
