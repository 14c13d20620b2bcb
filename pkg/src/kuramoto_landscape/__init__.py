"""Energy-landscape analysis of Kuramoto oscillators on dense graphs.

Library + CLI for the synchronization landscape of the coupling energy
sum_{i,j} a_ij cos(theta_i - theta_j): graph generators, energy/gradient/
Hessian evaluation, gradient-flow integration with equilibrium
classification, and an executable certificate that verifies the 0.7889
density threshold for "every local maximum is global", including a hardened
interval-arithmetic mode.
"""

from .certificate import (
    ALPHA_BRANCH_LIMIT,
    DEFAULT_ALPHA_RANGE,
    DEFAULT_DELTA,
    DEFAULT_EPSILON,
    DEFAULT_MU_RANGE,
    REFERENCE_MARGINS,
    CertificateEvaluation,
    CertificateParams,
    InfeasibleError,
    RegimeViolationError,
    alpha_branch_threshold,
    contradiction_condition,
    evaluate_certificate,
    gamma1_zero_branch,
    lxb_r_lower_bound,
    lxb_threshold,
    optimize_parameters,
    s_delta,
    sweep_certificate,
    verify_certificate_hardened,
)
from .dynamics import (
    EquilibriumReport,
    NotAnEquilibriumError,
    NumericalBlowupError,
    RefinementFailedError,
    classify,
    cone_probe_vector,
    integrate,
    multistart_search,
    refine_equilibrium,
)
from .graphs import (
    Graph,
    GraphError,
    circulant_graph,
    complete_graph,
    is_connected,
    min_degree_fraction,
    random_min_degree_graph,
    read_edge_list,
    write_edge_list,
)
from .intervals import Interval, IntervalDomainError
from .landscape import (
    CompleteGraphError,
    ConeDecomposition,
    DimensionMismatchError,
    OrderParameter,
    PhaseState,
    UndefinedOrientationError,
    cone_decomposition,
    empirical_alpha,
    energy,
    good_vertices,
    gradient_flow_rhs,
    hessian_matrix,
    hessian_quadratic_form,
    order_parameter,
)

__version__ = "0.1.0"
