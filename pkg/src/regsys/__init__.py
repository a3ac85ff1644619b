"""Feedback classification of linear systems over squarefree Z/n."""

__version__ = "0.1.0"

from .canonical import (  # noqa: E402
    CanonicalComponent,
    CanonicalDecomposition,
    InvariantSummary,
    algorithm_output,
    brunovski_block,
    canonical_decomposition,
    idempotent_family,
    invariants_of,
    lift_indices,
    single_input_canonical,
)
from .equivalence import (  # noqa: E402
    EquivalenceVerdict,
    feedback_equivalent,
    orbit_bfs,
    orbit_partition,
    reachable_equivalent,
)
from .matrix import Mat, SmithForm, invert, is_invertible, smith_form  # noqa: E402
from .ring import RingContext, RingElement  # noqa: E402
from .similarity import similarity_normal_form  # noqa: E402
from .system import (  # noqa: E402
    FeedbackTransform,
    LinSys,
    apply_feedback,
    is_reachable,
    nk_invariant_factors,
    random_feedback,
    reachability_matrix,
    reduce_form,
)

__all__ = [
    "CanonicalComponent",
    "CanonicalDecomposition",
    "EquivalenceVerdict",
    "FeedbackTransform",
    "InvariantSummary",
    "LinSys",
    "Mat",
    "RingContext",
    "RingElement",
    "SmithForm",
    "algorithm_output",
    "apply_feedback",
    "brunovski_block",
    "canonical_decomposition",
    "feedback_equivalent",
    "idempotent_family",
    "invariants_of",
    "invert",
    "is_invertible",
    "is_reachable",
    "lift_indices",
    "nk_invariant_factors",
    "orbit_bfs",
    "orbit_partition",
    "random_feedback",
    "reachability_matrix",
    "reachable_equivalent",
    "reduce_form",
    "similarity_normal_form",
    "single_input_canonical",
    "smith_form",
]
