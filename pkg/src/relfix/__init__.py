"""Fixed points of relation-preserving contractions on finite metric-like spaces."""

from .analysis import (
    PropertyReport,
    TailSet,
    check_continuity_like,
    check_r_completeness,
    check_r_continuity_like,
    check_sigma_self_closed,
    limits_of_tail,
    realizable_tail_sets,
    simulate_walks,
)
from .contraction import (
    ContractionReport,
    IntegrandSpec,
    OmegaError,
    check_k,
    check_omega,
    integral_minimal_k,
    integrate,
    minimal_k,
)
from .relation import (
    FiniteRelation,
    Path,
    SelfMap,
    Verdict,
    find_path,
    is_complete,
    is_directed,
    is_f_closed,
    is_preserving,
    symmetrize,
)
from .solver import (
    FixedPointCertificate,
    NonConvergence,
    PicardTrace,
    a_priori_bound,
    fixed_points,
    picard,
    uniqueness_by_paths,
)
from .space import (
    AxiomReport,
    FiniteDistanceSpace,
    SpaceClass,
    SpaceError,
    Violation,
    check_metric,
    check_metric_like,
    check_partial_metric,
    classify,
)
from .validator import (
    HypothesisReport,
    Instance,
    InstanceError,
    Prediction,
    corollary3_variants,
    cross_check,
    validate,
)

__version__ = "0.1.0"
