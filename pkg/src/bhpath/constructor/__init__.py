"""Proof-guided construction of fault-free prescribed hamiltonian paths."""
from .construct import Construction, Trace, build, construct, hcycle_block, hpath_from_faulty_block
from .dimension import (
    CaseTag,
    DimensionChoice,
    Family,
    Rule,
    admissible_dimensions,
    classify,
    normalize_blocks,
    select_dimension,
)
from .errors import (
    ConstructionError,
    ConstructionFailure,
    Infeasible,
    NoAdmissibleDimension,
    NoCandidate,
    UnsupportedCase,
)
from .lemmas import (
    LemmaContext,
    pick_branch_pair_l0,
    pick_crossing_neighbor,
    pick_crossing_neighbor_l0,
    pick_detour_pair,
    pick_edge_on_path,
    pick_extension_neighbor,
    pick_two_neighbors,
    pick_vertex_clear,
    pick_vertex_unlinked,
)

__all__ = [name for name in dir() if not name.startswith("_")]
