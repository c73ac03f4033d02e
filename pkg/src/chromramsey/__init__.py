"""Chromatic Ramsey numbers of acyclic hypergraphs: exact coloring, 1-intersection
graphs, coloring lifts, monochromatic substructure finders and verification campaigns."""

from .errors import ChromRamseyError, InputError, InvariantError, ResourceError
from .hypercore import (
    EdgePartition,
    GreedyWitnesses,
    Hypergraph,
    VertexColoring,
    chromatic_number,
    complete_hypergraph,
    components,
    greedy_coloring_with_witnesses,
    induced,
    is_proper,
    remove,
)
from .intersect import (
    one_intersection_graph,
    partition_from_igraph_coloring,
    structure_decompose,
    two_color_no_one_intersections,
)
from .lift import brooks_color, color_via_intersection, lift_coloring, list_color
from .skeleton import build_skeleton, find_bad_components, switch

__version__ = "0.1.0"
