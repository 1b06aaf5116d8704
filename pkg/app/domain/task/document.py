"""
태스크 문서 스키마 (JSON 입력)
알 수 없는 키는 모두 거부합니다.
"""

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.domain.task.family import FamilyKind
from app.domain.task.knowledge import BuiltinKnowledge

WorldList = List[List[int]]
WorldSelector = Union[Literal["full", "support"], WorldList]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ConceptDoc(_Strict):
    """개념 factor 선언"""

    name: str = Field(..., description="factor 이름")
    cardinality: int = Field(..., ge=1, description="값 개수")
    values: Optional[List[str]] = Field(None, description="값 인덱스에 붙일 기호 이름 (표시용)")


class KnowledgeDoc(_Strict):
    """내장 지식 또는 명시적 테이블"""

    builtin: Optional[BuiltinKnowledge] = Field(None, description="내장 지식 이름")
    m: Optional[int] = Field(None, description="modular_sum의 법")
    table: Optional[List[List[int]]] = Field(None, description="[world..., label] 항목 목록")

    @model_validator(mode="after")
    def _exactly_one(self) -> "KnowledgeDoc":
        if (self.builtin is None) == (self.table is None):
            raise ValueError("knowledge는 builtin 또는 table 중 정확히 하나를 가져야 합니다")
        return self


class IncludeSupportDoc(_Strict):
    include: WorldList


class ExcludeSupportDoc(_Strict):
    exclude: WorldList


class ProductSupportDoc(_Strict):
    product: List[List[int]]


SupportDoc = Union[Literal["full"], IncludeSupportDoc, ExcludeSupportDoc, ProductSupportDoc]


class AlphaFamilyDoc(_Strict):
    kind: FamilyKind
    ties: Optional[List[List[int]]] = None


class ConceptSupervisionDoc(_Strict):
    factors: List[int]
    worlds: WorldSelector


class DistillationDoc(_Strict):
    worlds: WorldSelector


class MultitaskDoc(_Strict):
    name: Optional[str] = None
    knowledge: KnowledgeDoc
    worlds: WorldSelector
    labels: int = Field(..., ge=1)


class MitigationsDoc(_Strict):
    """미티게이션 블록"""

    concept_supervision: Optional[ConceptSupervisionDoc] = None
    distillation: Optional[DistillationDoc] = None
    reconstruction: bool = False
    multitask: List[MultitaskDoc] = Field(default_factory=list)


class TaskDocument(_Strict):
    """태스크 문서"""

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "name": "tiny-sumparity",
                "concepts": [
                    {"name": "d1", "cardinality": 2},
                    {"name": "d2", "cardinality": 2},
                ],
                "labels": 2,
                "knowledge": {"builtin": "sum_parity"},
                "support": "full",
                "alpha_family": {"kind": "factorized", "ties": [[0, 1]]},
            }
        },
    )

    name: Optional[str] = None
    description: Optional[str] = None
    concepts: List[ConceptDoc] = Field(..., min_length=1)
    labels: int = Field(..., ge=1)
    knowledge: KnowledgeDoc
    support: SupportDoc = "full"
    alpha_family: AlphaFamilyDoc
    mitigations: Optional[MitigationsDoc] = None
