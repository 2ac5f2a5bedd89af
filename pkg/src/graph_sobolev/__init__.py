"""Discrete Sobolev spaces on weighted locally finite graphs.

Norms, p-energy, Cheeger constants, the p-Rayleigh bottom, area and co-area
formulas, and the distance from the constant function 1 to compactly
supported functions on graph families.
"""

from .cheeger import (
    CheegerResult,
    boundary,
    boundary_measure,
    boundary_weight,
    cheeger_exact,
    cheeger_heuristic,
    cheeger_ratio,
    volume,
)
from .estimators import CheegerEstimator, DensityGapEstimator, LambdaPEstimator
from .functions import (
    GraphFunction,
    LevelDecomposition,
    area_formula_sides,
    coarea_formula_sides,
    cp_margin,
    deg_weighted_norm_p,
    fp_margin,
    grad_norm_script_p,
    grad_norm_W_p,
    level_decomposition,
    lp_norm_p,
    p_energy,
    rayleigh_quotient,
    sobolev_norm_p,
)
from .gap import (
    ChainReport,
    GapPoint,
    GeometricDecay,
    distance_to_constant,
    distance_to_target,
    gap_curve,
    theorem1_chain_check,
    theorem2_chain_check,
    theorem_lower_bound,
)
from .graph import (
    Graph,
    GraphError,
    GraphFamily,
    build_graph,
    custom_family,
    degree,
    line_family,
    measures,
    tree_family,
    truncate,
)
from .spectral import RayleighResult, cheeger_inequality_margin, lambda_p_estimate

__version__ = "0.1.0"
