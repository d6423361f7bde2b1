"""Canonical index, quotient singularities and Kummer-type constructions for
cyclic quotients of holomorphic symplectic and abelian varieties."""

from .arith import (
    IntMatrix,
    SNFDecomposition,
    TorsionVector,
    matrix_order,
    smith_normal_form,
    solve_linear_mod,
)
from .index import (
    IndexResult,
    QuotientScenario,
    canonical_index,
    class_group_torsion,
    cy_type_constraints,
    etale_chi_constraint,
    index_table,
    is_purely_nonsymplectic,
    symplectic_etale_obstruction,
)
from .singular import (
    FixedComponentModel,
    LocalWeights,
    SingularityClass,
    admissible_b2,
    admissible_prime_orders,
    age,
    classify_all_powers,
    classify_generator,
    paper_terminality_conditions,
    symbolic_age,
    weights_from_model,
)
from .abelian import (
    CMType,
    KummerScenario,
    SurfaceAffineAuto,
    auto_order,
    brute_force_fixed_configurations,
    fixed_points_exist_on_surface,
    freeness_predicate,
    has_unit_eigenvalue,
    kummer_quotient_classification,
    preserves_kummer_fiber,
    symplectic_multiplier,
)

__version__ = "0.1.0"
