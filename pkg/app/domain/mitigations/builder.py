"""
미티게이션 블록 -> MitigationSet 변환
"""

from typing import Any, Dict, Optional, Union

from pydantic import ValidationError

from app.core.exceptions import TaskValidationError
from app.domain.mitigations.models import (
    ConceptSupervision,
    Distillation,
    ExtraTask,
    MitigationSet,
)
from app.domain.task.builder import build_knowledge, select_worlds
from app.domain.task.document import MitigationsDoc
from app.domain.task.task_spec import TaskSpec


def build_mitigations(
    doc: Optional[Union[MitigationsDoc, Dict[str, Any]]], task: TaskSpec
) -> MitigationSet:
    """
    미티게이션 블록을 MitigationSet으로 변환

    "full"은 개념 공간의 모든 world, "support"는 태스크 support를 뜻합니다.

    Raises:
        TaskValidationError: 형식 오류, 범위 밖 factor/world
    """
    if doc is None:
        return MitigationSet.none()
    if isinstance(doc, dict):
        try:
            doc = MitigationsDoc.model_validate(doc)
        except ValidationError as e:
            raise TaskValidationError(
                "malformed mitigations block",
                details={"errors": e.errors(include_url=False, include_context=False)},
            )

    supervision = None
    if doc.concept_supervision is not None:
        supervision = ConceptSupervision(
            factors=tuple(sorted(set(doc.concept_supervision.factors))),
            worlds=select_worlds(doc.concept_supervision.worlds, task),
        )
    distillation = None
    if doc.distillation is not None:
        distillation = Distillation(cells=select_worlds(doc.distillation.worlds, task))

    extras = []
    for i, mt in enumerate(doc.multitask):
        extras.append(
            ExtraTask(
                name=mt.name or f"task{i + 1}",
                knowledge=build_knowledge(mt.knowledge, task.space, mt.labels),
                worlds=select_worlds(mt.worlds, task),
            )
        )

    ms = MitigationSet(
        concept_supervision=supervision,
        distillation=distillation,
        reconstruction=doc.reconstruction,
        multitask=tuple(extras),
    )
    return ms.validate(task.space)
