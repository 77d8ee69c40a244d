"""Spanning trees with few or isolated degree-2 vertices, with certificates."""

from .certificates import (
    StructureResult,
    Verdict,
    WConfig,
    degree2_independent,
    find_bad_path,
    has_three_consecutive_deg2,
    is_good,
    verify_structure,
    verify_w_configuration,
)
from .errors import GraphError, InternalBugError, NoStarCoverError, PreconditionError
from .graph_core import Graph, Tree
from .graph_io import from_graph6, read_graph_file, to_graph6
from .oracle import (
    EnumerationBudget,
    all_trees_satisfy,
    count_spanning_trees,
    exists_tree_satisfying,
    for_each_spanning_tree,
)
from .reduction_engine import find_structure
from .structure_search import StarCover, find_star_cover, max_bipartite_local
from .tree_synthesis import (
    build_good_tree,
    build_good_tree_with_trace,
    build_tree_no_adjacent_deg2,
    grow_star_tree,
)

__version__ = "0.1.0"
