"""Axiomatic digital topology on graphs.

Contractible transformations, recognition of normal spheres, manifolds
and disks, partitions of spaces, and a Jordan-Brouwer check for (n-1)-
spheres inside finite windows of the normal lattice Z^n.
"""

from .canon import canonical_code, isomorphism_check
from .graph import (
    Graph,
    ball,
    connected_components,
    induced_subgraph,
    join,
    mutual_rim,
    quotient_identify,
    rim,
)
from .homotopy import is_contractible, is_simple_edge, is_simple_point, reduce_to_subgraph
from .invariants import betti_numbers, enumerate_cliques, euler_characteristic
from .lattice import WindowSpec, generate_window, lattice_adjacent, point_kind
from .partition import glue_disks, jordan_partition, partition_by_surface, verify_partition
from .recognition import (
    classify_sphere,
    disk_boundary_heuristic,
    is_normal_disk,
    is_normal_manifold,
    minimal_sphere,
)

__version__ = "0.1.0"
