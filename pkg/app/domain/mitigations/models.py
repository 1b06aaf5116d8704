"""
미티게이션 제약 묶음 (MitigationSet)
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from app.core.exceptions import TaskValidationError
from app.domain.task.knowledge import KnowledgeTable
from app.domain.task.space import ConceptSpace


@dataclass(frozen=True)
class ConceptSupervision:
    """factors ⊆ [k] 에 대한 G^C world 감독"""

    factors: Tuple[int, ...]
    worlds: Tuple[int, ...]


@dataclass(frozen=True)
class Distillation:
    """G^K 셀에서 β = β* 고정"""

    cells: Tuple[int, ...]


@dataclass(frozen=True)
class ExtraTask:
    """multi-task 보조 태스크 (β_{K^τ}, G^τ)"""

    name: str
    knowledge: KnowledgeTable
    worlds: Tuple[int, ...]

    @property
    def label_count(self) -> int:
        return self.knowledge.label_count


@dataclass(frozen=True)
class MitigationSet:
    """개념 감독, distillation, reconstruction, multitask 제약 묶음"""

    concept_supervision: Optional[ConceptSupervision] = None
    distillation: Optional[Distillation] = None
    reconstruction: bool = False
    multitask: Tuple[ExtraTask, ...] = ()

    @classmethod
    def none(cls) -> "MitigationSet":
        return cls()

    def validate(self, space: ConceptSpace) -> "MitigationSet":
        """개념 공간 기준 범위 검사"""
        if self.concept_supervision is not None:
            for i in self.concept_supervision.factors:
                if not 0 <= i < space.k:
                    raise TaskValidationError(
                        "감독 factor 인덱스가 범위를 벗어났습니다", details={"factor": i}
                    )
            _check_indices(space, self.concept_supervision.worlds, "concept_supervision")
        if self.distillation is not None:
            _check_indices(space, self.distillation.cells, "distillation")
        for extra in self.multitask:
            if extra.knowledge.space != space:
                raise TaskValidationError(
                    "보조 태스크 지식이 다른 개념 공간을 참조합니다", details={"task": extra.name}
                )
            _check_indices(space, extra.worlds, f"multitask:{extra.name}")
        return self

    @property
    def is_empty(self) -> bool:
        return (
            self.concept_supervision is None
            and self.distillation is None
            and not self.reconstruction
            and not self.multitask
        )

    @property
    def has_supervision(self) -> bool:
        return self.concept_supervision is not None and bool(self.concept_supervision.factors) and bool(
            self.concept_supervision.worlds
        )

    @property
    def pinned_cells(self) -> Tuple[int, ...]:
        return self.distillation.cells if self.distillation is not None else ()

    def pins_every_cell(self, space: ConceptSpace) -> bool:
        return len(set(self.pinned_cells)) == space.total_worlds

    def only(self, name: str) -> "MitigationSet":
        """단일 미티게이션만 남긴 복사본"""
        return MitigationSet(
            concept_supervision=self.concept_supervision if name == "concept_supervision" else None,
            distillation=self.distillation if name == "distillation" else None,
            reconstruction=self.reconstruction if name == "reconstruction" else False,
            multitask=self.multitask if name == "multitask" else (),
        )

    def active_names(self) -> List[str]:
        names = []
        if self.has_supervision:
            names.append("concept_supervision")
        if self.distillation is not None and self.distillation.cells:
            names.append("distillation")
        if self.reconstruction:
            names.append("reconstruction")
        if self.multitask:
            names.append("multitask")
        return names

    def canonical(self) -> dict:
        return {
            "concept_supervision": None
            if self.concept_supervision is None
            else {
                "factors": list(self.concept_supervision.factors),
                "worlds": list(self.concept_supervision.worlds),
            },
            "distillation": None if self.distillation is None else list(self.distillation.cells),
            "reconstruction": self.reconstruction,
            "multitask": [
                {"name": e.name, "knowledge": e.knowledge.canonical(), "worlds": list(e.worlds)}
                for e in self.multitask
            ],
        }


def _check_indices(space: ConceptSpace, indices: Tuple[int, ...], where: str) -> None:
    for idx in indices:
        if not 0 <= idx < space.total_worlds:
            raise TaskValidationError(
                f"{where}: 유효하지 않은 world 인덱스", details={"index": idx}
            )
