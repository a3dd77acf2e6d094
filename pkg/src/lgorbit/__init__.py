"""Exact-arithmetic Landau-Ginzburg models on minimal adjoint orbits.

Everything is computed over Q with fractions: pencil geometry and critical
structure, blow-up tameness certificates, E-polynomial calculus, exact
long-exact-sequence chasing, monodromy weight filtrations, and the three
Landau-Ginzburg Hodge-number diamonds with their cross-checks.
"""

from .blowup import (
    ChartPotential,
    DivisorClass,
    GraphPoint,
    chart_coordinates,
    chart_pencil_rank,
    chart_potential,
    divisor_report,
    gradient_and_hessian,
    graph_contains,
    hessian_certificates,
    no_critical_on_exceptional,
)
from .hodge import (
    CohomologyProfile,
    EPoly,
    LESProblem,
    Slot,
    base_locus,
    blowup_total,
    exceptional_divisor,
    flag_variety,
    gysin_purity,
    hodge_tate_check,
    mayer_vietoris_fiber,
    named_spaces,
    open_orbit,
    product_space,
    projective_space,
    relative_profile,
    solve_les,
)
from .kkp import (
    KKPDiamond,
    MorsePoint,
    RelativeData,
    f_diamond,
    growth_at_infinity_check,
    h_diamond,
    i_diamond,
    kkp_report,
    lg_relative_data,
    render_diamond,
)
from .linalg import QMatrix, Subspace, as_fraction, format_fraction, rank_and_kernel, subspace_combine
from .multipoly import MultiPoly, poly_partial
from .orbit import (
    INDETERMINATE,
    BiPoint,
    PencilForms,
    Spectrum,
    build_forms,
    classify_pair,
    critical_points,
    embed_point,
    evaluate_pencil,
    jacobian_matrix,
    minimal_orbit_charpoly,
    rank_one_locus_certificate,
    sample_and_rank,
    sample_locus_points,
)
from .weights import (
    NilpotentOp,
    WeightFiltration,
    check_filtration_axioms,
    jordan_graded_dims,
    log_unipotent,
    nilpotent_op,
    weight_filtration,
)

__version__ = "0.1.0"
