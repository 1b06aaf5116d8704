"""
예측 덤프 평가 지표
"""

from app.domain.metrics.alignment import (
    AlignmentResult,
    apply_alignment,
    contingency,
    hungarian_align,
    pearson_corr_matrix,
)
from app.domain.metrics.dump import PredictionDump, dump_columns
from app.domain.metrics.hungarian import solve_assignment, solve_max_assignment
from app.domain.metrics.scores import (
    MetricsReport,
    aligned_concept_f1,
    concept_collapse,
    eval_beta_f1,
    evaluate_dump,
    identity_concept_f1,
    label_f1,
    macro_f1,
)

__all__ = [
    "AlignmentResult",
    "MetricsReport",
    "PredictionDump",
    "aligned_concept_f1",
    "apply_alignment",
    "concept_collapse",
    "contingency",
    "dump_columns",
    "eval_beta_f1",
    "evaluate_dump",
    "hungarian_align",
    "identity_concept_f1",
    "label_f1",
    "macro_f1",
    "pearson_corr_matrix",
    "solve_assignment",
    "solve_max_assignment",
]
