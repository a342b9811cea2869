"""Exact solvers for domination problems on graphs with a small modulator.

The graph is given together with a vertex set S whose removal leaves a
cluster graph (disjoint cliques), a split graph (a clique plus an
independent set) or an edgeless graph. Solvers run in time exponential only
in |S|.
"""

from .cover_dp import (
    BlockMode,
    CoverInstance,
    CoverMode,
    CoverSolution,
    solve_escp,
    solve_exact_one_scp,
    solve_scp,
    solve_set_cover,
    solve_wsmp,
    solve_wsmp_marked,
)
from .cvd import (
    eds_guess_preprocess,
    reduce_ds_to_scp,
    solve_dc_cvd,
    solve_ds_cvd,
    solve_eds_cvd,
    solve_ids_cvd,
    solve_thds_cvd,
)
from .dispatch import solve
from .graph import (
    ClusterPartition,
    Graph,
    SplitPartition,
    build_graph,
    closed_neighborhood,
    cluster_partition,
    n_equal_2,
    split_partition,
)
from .instances import (
    CnfFormula,
    extract_assignment,
    gen_planted,
    parse_instance,
    reduce_3sat_to_eds,
    reduce_setcover_to_split,
    serialize_instance,
)
from .modulator import Kind, Modulator, find_cvd, find_svd, find_vc, verify_modulator
from .oracle import brute_cover, brute_min, check_solution, mmvc_from_ids, normalize_split_dominating
from .problem import DomInstance, DomSolution, Status, Variant, VariantSpec
from .svd import solve_eds_svd_branch, solve_eds_svd_simple, solve_ids_svd

__version__ = "0.1.0"
