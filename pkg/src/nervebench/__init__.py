"""nervebench: a desk-scale workbench for nerve constructions on finite categories."""

__version__ = "0.1.0"

from .fincat import (  # noqa: F401
    FinCat,
    Functor,
    NatTrans,
    CommaCategory,
    ClassificationFlags,
    validate_category,
    opposite,
    product,
    coproduct,
    comma_category,
    classify_category,
    functor_image_checks,
    is_isomorphism_of_categories,
    find_adjoint,
    check_adjunction,
    opfibration_check,
    cocartesian_lift,
)
from .nerve import (  # noqa: F401
    EXACT,
    MODES,
    SemiSimplicialSet,
    NervePackage,
    semisimplicial_nerve,
    reduced_nerve,
    grothendieck_total,
    build_N,
    N_on_functor,
    xi_functor,
)
from .axiomcheck import (  # noqa: F401
    verify_N1,
    verify_N2,
    verify_N3,
    verify_N4,
    verify_N5_zigzag,
    parallel_morphism_homotopy,
)
from .derivator import (  # noqa: F401
    TargetCategory,
    DiagramFunctor,
    CartesianMarking,
    MonadData,
    lattice_target,
    limit,
    colimit,
    left_kan,
    right_kan,
    is_pi_cartesian,
    cart_functors,
    cartesian_projector_left,
    cartesian_projector_right,
    idempotent_monad_adjoint,
    enlargement_E,
    restriction_equivalence_check,
    fder3_fder4_check,
    transport_equivalence_check,
    left_right_comparison,
    opfib_fiberwise_check,
    projector_pullback_commutation,
)
from .reports import VerificationReport  # noqa: F401
