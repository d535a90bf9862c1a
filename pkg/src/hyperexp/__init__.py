"""Expansion witnesses, disjoint cuts and shared-edge routing on hyperbolic graphs."""

from .graph import (
    UNREACHABLE,
    DomainError,
    Graph,
    GraphFormatError,
    InducedSubgraph,
    ball,
    bfs_distances,
    boundary,
    canonical_shortest_path,
    cut_edge_set,
    edge_expansion,
    format_edge_list,
    load_graph,
    node_expansion,
    normalized_expansion,
    remove_nodes,
)
from .hyperbolicity import (
    HyperbolicityResult,
    delta_exact,
    delta_two_approx,
    effective_delta,
    resolve_delta,
)
from .bounds import corollary1_bound, theorem1_bound, theorem3_bound, validate_tau
from .witnesses import WitnessFamily, cylinder, nested_witness_family
from .overlap import OverlapFamilySet, overlap_families, verify_limited_overlap
from .cuts import CutFamily, certify_cut_family, disjoint_cut_family
from .flow import INF, FlowResult, decompose_paths, max_flow
from .vulnerability import (
    count_shared_edges,
    ehssc_approx,
    greedy_uumv,
    uumv_approx,
)
from .sse import SseSolution, sse_solve

__version__ = "0.1.0"
