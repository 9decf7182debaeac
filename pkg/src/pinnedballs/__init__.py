"""Pinned-ball pseudo-collisions, their folding representation and collision bounds."""

from .bounds import (
    KissingInfo,
    LogBound,
    alpha_F,
    bound_alpha,
    bound_fold_orbit,
    bound_lattice,
    bound_main,
    bound_main_tree_improved,
    bound_moving,
    bound_tree,
    bound_tree_improved,
    bound_two_halfspaces,
    kissing_info,
    recursion_step,
)
from .core import BallConfiguration, ContactGraph, full_contact_graph, is_connected
from .errors import *  # noqa: F401,F403
from .exact import Root3Scalar
from .folding import Halfspace, OrbitRecord, fold, make_wedge, orbit_size_witness, run_foldings
from .pinned import (
    CollisionLog,
    Schedule,
    VelocityState,
    WitnessBall,
    collision_map,
    halfspace_from_edge,
    ps_refutation_check,
    run_schedule,
    verify_fold_equivalence,
    witness_ball,
    z_vector,
)
from .scenarios import (
    chain_config,
    four_disc_scenario,
    random_config,
    random_lattice_config,
    star_config,
    triangular_lattice_config,
)
from .search import SearchResult, search_max_collisions, sweep

__version__ = "0.1.0"
