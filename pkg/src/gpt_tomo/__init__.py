"""Tomographic locality toolkit for generalised probabilistic theories."""

from . import theories
from .errors import (
    ContractError,
    DecompositionError,
    DimensionMismatch,
    GptError,
    MissingCertificateError,
    RankError,
    SteeringClosureError,
    UnsupportedTheoryError,
)
from .entanglement import EntanglementReport, SeparableDecomposition, classify, is_separable_state
from .linalg import TOL_LP, TOL_NUM, TOL_PSD, TOL_RANK, Subspace
from .model import (
    CompositeSystem,
    GptSystem,
    boxtimes_effect,
    boxtimes_state,
    conditional_effect,
    conditional_state,
    from_json,
    is_tomographically_local,
    to_json,
    validate_composition,
)
from .theories import named_states, resolve_theory
from .tomography import TomographicDecomposition, decompose, verify_projector_laws

__version__ = "0.1.0"

__all__ = [
    "TOL_LP",
    "TOL_NUM",
    "TOL_PSD",
    "TOL_RANK",
    "CompositeSystem",
    "ContractError",
    "DecompositionError",
    "DimensionMismatch",
    "EntanglementReport",
    "GptError",
    "GptSystem",
    "MissingCertificateError",
    "RankError",
    "SeparableDecomposition",
    "SteeringClosureError",
    "Subspace",
    "TomographicDecomposition",
    "UnsupportedTheoryError",
    "boxtimes_effect",
    "boxtimes_state",
    "conditional_effect",
    "classify",
    "conditional_state",
    "decompose",
    "from_json",
    "is_separable_state",
    "is_tomographically_local",
    "named_states",
    "resolve_theory",
    "theories",
    "to_json",
    "validate_composition",
    "verify_projector_laws",
]
