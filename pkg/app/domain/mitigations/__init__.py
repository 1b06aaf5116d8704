"""
미티게이션 모듈
개념 감독, distillation, reconstruction, multitask 제약
"""

from app.domain.mitigations.builder import build_mitigations
from app.domain.mitigations.constraints import (
    admits_alpha,
    admits_concept_supervision,
    admits_distillation,
    admits_multitask,
    admits_multitask_fixed,
    admits_reconstruction,
    apply_distillation,
)
from app.domain.mitigations.models import (
    ConceptSupervision,
    Distillation,
    ExtraTask,
    MitigationSet,
)
from app.domain.mitigations.multitask import conjoin_multitask, dropped_multitask_worlds

__all__ = [
    "ConceptSupervision",
    "Distillation",
    "ExtraTask",
    "MitigationSet",
    "admits_alpha",
    "admits_concept_supervision",
    "admits_distillation",
    "admits_multitask",
    "admits_multitask_fixed",
    "admits_reconstruction",
    "apply_distillation",
    "build_mitigations",
    "conjoin_multitask",
    "dropped_multitask_worlds",
]
