"""Effective homological algebra for arithmetic localization and
completion of finite-type chain complexes.

Everything is exact: integer matrices with tracked Smith normal forms,
finitely generated abelian groups in canonical form, the derived
completion functors on a catalogue of building-block modules, truncated
divided-power coordinate rings for Moore-space multiplications, and
bounded complexes of free modules with cones, Hom complexes, CW
skeleta, and p-complete finite models.
"""

from .linalg import (
    ZZ,
    BaseRing,
    IntMatrix,
    SmithForm,
    cokernel_factors,
    determinant,
    is_prime,
    kernel_basis,
    matrix_rank,
    ring_inverted,
    ring_local_at,
    ring_mod,
    smith_normal_form,
)
from .primes import PrimeSet, q_factor
from .groups import (
    FgAbGroup,
    GroupMap,
    QuotientPresentation,
    exact_at,
    ext,
    from_presentation,
    hom,
    localize_group,
    mod_power,
    ann_power,
    quotient_with_projection,
    subgroup_with_embedding,
    tensor,
    tor,
)
from .functors import (
    Atom,
    CatalogueGroup,
    PadicModule,
    SesOfGroups,
    SixTermReport,
    check_detect_epi,
    check_four_term_conclusion,
    dp_constants,
    is_ext_p_complete,
    is_q_local,
    is_q_torsion,
    is_uniformly_q_torsion,
    l0,
    l0_fg,
    l1,
    l0_l1_oracle,
    six_term,
)
from .moore_rings import (
    PolyModule,
    QuotientCertificate,
    TruncatedDpRing,
    dp_quotient,
    dp_relation_matrix,
    s_inv_p_quotient,
    s_mod_p_inf_quotient,
)
from .complexes import (
    ChainComplex,
    ChainContraction,
    ChainMap,
    HomologyData,
    SkeletalFiltration,
    all_homology,
    base_change,
    chain_contraction,
    check_completed_mod_p,
    check_cw_definition,
    check_cw_minimality,
    check_mod_p_detects_zero,
    check_p_equivalence,
    check_tensor_padic,
    completed_homology,
    cone,
    cw_structure,
    fiber,
    finiteness_report,
    hom_complex,
    homology,
    homology_data,
    homotopy_classes,
    induced_map,
    is_acyclic,
    mod_p_homology,
    moore_complex,
    p_finite_model,
    shift,
    uct_maps_report,
    uct_mod_p_dimension,
)
from .complexes import tensor as tensor_complex

__version__ = "0.1.0"

__all__ = [
    "ZZ",
    "BaseRing",
    "IntMatrix",
    "SmithForm",
    "cokernel_factors",
    "determinant",
    "is_prime",
    "kernel_basis",
    "matrix_rank",
    "ring_inverted",
    "ring_local_at",
    "ring_mod",
    "smith_normal_form",
    "PrimeSet",
    "q_factor",
    "FgAbGroup",
    "GroupMap",
    "QuotientPresentation",
    "exact_at",
    "ext",
    "from_presentation",
    "hom",
    "localize_group",
    "mod_power",
    "ann_power",
    "quotient_with_projection",
    "subgroup_with_embedding",
    "tensor",
    "tor",
    "Atom",
    "CatalogueGroup",
    "PadicModule",
    "SesOfGroups",
    "SixTermReport",
    "check_detect_epi",
    "check_four_term_conclusion",
    "dp_constants",
    "is_ext_p_complete",
    "is_q_local",
    "is_q_torsion",
    "is_uniformly_q_torsion",
    "l0",
    "l0_fg",
    "l1",
    "l0_l1_oracle",
    "six_term",
    "PolyModule",
    "QuotientCertificate",
    "TruncatedDpRing",
    "dp_quotient",
    "dp_relation_matrix",
    "s_inv_p_quotient",
    "s_mod_p_inf_quotient",
    "ChainComplex",
    "ChainContraction",
    "ChainMap",
    "HomologyData",
    "SkeletalFiltration",
    "all_homology",
    "base_change",
    "chain_contraction",
    "check_completed_mod_p",
    "check_cw_definition",
    "check_cw_minimality",
    "check_mod_p_detects_zero",
    "check_p_equivalence",
    "check_tensor_padic",
    "completed_homology",
    "cone",
    "cw_structure",
    "fiber",
    "finiteness_report",
    "hom_complex",
    "homology",
    "homology_data",
    "homotopy_classes",
    "induced_map",
    "is_acyclic",
    "mod_p_homology",
    "moore_complex",
    "p_finite_model",
    "shift",
    "tensor_complex",
    "uct_maps_report",
    "uct_mod_p_dimension",
    "__version__",
]
