"""
Extremality 검사 모듈
"""

from app.domain.extremality.determinism import (
    is_logM_deterministic,
    max_prob_per_world,
    min_max_prob_bound,
    satisfies_max_prob_bound,
)
from app.domain.extremality.layer import (
    InferenceLayerSpec,
    LayerDocument,
    LayerKind,
    mixture_label_dist,
    softmax,
)
from app.domain.extremality.scan import ExtremalityReport, check_extremality, eligible_pairs

__all__ = [
    "ExtremalityReport",
    "InferenceLayerSpec",
    "LayerDocument",
    "LayerKind",
    "check_extremality",
    "eligible_pairs",
    "is_logM_deterministic",
    "max_prob_per_world",
    "min_max_prob_bound",
    "mixture_label_dist",
    "satisfies_max_prob_bound",
    "softmax",
]
