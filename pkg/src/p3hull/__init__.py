"""q-Kneser and Grassmann graphs over finite fields, exact q-counting, and
P3-hull (threshold-2 infection) computations on them."""

from .constructions import (
    AdaptedBases,
    adapted_bases,
    grassmann_pair,
    kneser_case1_pair,
    kneser_case2_pair,
    lemma24_w4,
    paper_pair,
    verify_grassmann_chain,
)
from .errors import (
    AmbientMismatch,
    DivisionByZero,
    IdOutOfRange,
    IndexOutOfRange,
    InvalidParams,
    LimitExceeded,
    NotPrimePower,
    PreconditionViolated,
)
from .gfq import FieldElement, FieldSpec, field_arith, find_irreducible, make_field
from .graphgen import (
    Caps,
    Family,
    SubspaceGraph,
    build_graph,
    degree_report,
    export_edge_list,
    neighbors,
    partition_by_intersection,
    read_edge_list,
)
from .hull import (
    InfectionTrace,
    VertexSet,
    find_hull_pair,
    hull,
    hull_by_sweeps,
    interval,
    is_hull_set,
    verify_no_singleton_hull,
)
from .qcomb import (
    CountParams,
    check_d_i0_bound,
    count_a,
    count_case2_common,
    count_dij,
    dij_breakdown,
    gaussian_binomial,
    q_factorial,
)
from .subspace import (
    Subspace,
    contains,
    coordinate_subspace,
    enumerate_subspaces,
    intersection,
    intersection_dim,
    rref,
    sum_span,
)

__version__ = "0.1.0"
