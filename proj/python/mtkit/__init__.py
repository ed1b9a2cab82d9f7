"""Finite-level group-ring calculus: ray class towers, refined theta
families and Fitting ideals over truncated p-adic group rings."""

from ._core import (  # noqa: F401
    FiniteAbelianGroup,
    GroupRingElement,
    GroupRingRing,
    HeckeData,
    IdealLattice,
    ModulusIndex,
    MtkitError,
    PadicContext,
    PadicInt,
    PresentedModule,
    RayClassDistribution,
    RefinedFamily,
    RunConfig,
    TowerModel,
    build_tower,
    compare_scalars,
    conjecture_check,
    det_multiplication,
    element_from_json,
    feasible_ap_residues,
    fitting_ideal,
    generate_distribution,
    ideal_equal,
    idempotent,
    invert_element,
    involution,
    is_unit,
    omega,
    phi_poly,
    project_theta,
    project_theta_refined,
    projected_unit,
    run_suites,
    s_refine,
    suite_names,
    theorem71_harness,
    theta_from_symbol_table,
    unrefine_factor,
    verify_norm_relations,
    verify_refined_compat,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
