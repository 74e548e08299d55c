"""Locality certification and local compilation of quantum walks on graphs.

The package decides whether a unitary acts locally on a graph, and lowers a
Z-local evolution ``exp(-iHt)`` to a sequence of C-local operations by way
of a discrete-time quantum walk.
"""

from .compiler import (
    CLocalFactor,
    LemmaReport,
    WalkPlan,
    assemble_plan,
    certify_plan,
    check_appendix_lemmas,
    compile_plan,
    execute_plan,
)
from .config import DEFAULT, Tolerances
from .correspondence import (
    Isometry,
    PsiFamily,
    SimulationResult,
    WalkSpace,
    build_isometry,
    build_psi_states,
    conditional_swap,
    error_bound,
    full_swap,
    prepare_walk,
    select_parameters,
    simulate_correspondence,
)
from .errors import *  # noqa: F401,F403
from .graph import Graph, PerpAssignment, is_edge, load_graph, parse_graph, perp_assignment
from .locality import (
    BlockFactor,
    LocalityVerdict,
    block_factors,
    check_h_local,
    check_z_local,
    find_c_local_partition,
    h_from_c_local,
    sample_c_local,
    verify_partition,
)
from .spectral import (
    PerronData,
    abs_operator,
    matrix_exponential,
    operator_norm,
    principal_eigvec,
)

__version__ = "0.1.0"
