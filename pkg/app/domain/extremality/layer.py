"""
추론 레이어 표현

- linear_prob: world별 라벨 분포 테이블 (확률 논리 방식)
- softmax_linear: world별 로짓 가중치 행렬 (개념 병목 + softmax 방식)
"""

import enum
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.core.exceptions import InputDomainError, TaskValidationError
from app.domain.task.document import ConceptDoc
from app.domain.task.space import ConceptSpace, Factor

DISTRIBUTION_TOLERANCE = 1e-9


class LayerKind(str, enum.Enum):
    LINEAR_PROB = "linear_prob"
    SOFTMAX_LINEAR = "softmax_linear"


class LayerDocument(BaseModel):
    """레이어 파일 스키마 (행 = world, lexicographic 순서)"""

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "kind": "softmax_linear",
                "concepts": [{"name": "c1", "cardinality": 2}],
                "labels": 2,
                "rows": [[10.0, 0.0], [0.0, 10.0]],
            }
        },
    )

    kind: LayerKind
    concepts: List[ConceptDoc] = Field(..., min_length=1)
    labels: int = Field(..., ge=1)
    rows: List[List[float]]


def softmax(logits: np.ndarray) -> np.ndarray:
    """마지막 축 기준 softmax (최댓값을 빼서 overflow 방지)"""
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / np.sum(exp, axis=-1, keepdims=True)


@dataclass(frozen=True, eq=False)
class InferenceLayerSpec:
    kind: LayerKind
    space: ConceptSpace
    label_count: int
    rows: np.ndarray

    def __post_init__(self) -> None:
        rows = np.array(self.rows, dtype=np.float64)
        if rows.shape != (self.space.total_worlds, self.label_count):
            raise TaskValidationError(
                "layer rows must have shape (worlds, labels)",
                details={"shape": list(rows.shape), "expected": [self.space.total_worlds, self.label_count]},
            )
        if not np.all(np.isfinite(rows)):
            raise TaskValidationError("layer rows must be finite reals")
        if self.kind is LayerKind.LINEAR_PROB:
            if np.any(rows < 0) or np.any(np.abs(rows.sum(axis=1) - 1.0) > DISTRIBUTION_TOLERANCE):
                raise TaskValidationError("linear_prob rows must be label distributions")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_document(cls, doc: LayerDocument) -> "InferenceLayerSpec":
        space = ConceptSpace(tuple(Factor(c.name, c.cardinality) for c in doc.concepts))
        return cls(LayerKind(doc.kind), space, doc.labels, np.asarray(doc.rows, dtype=np.float64))

    def endpoint_distributions(self) -> np.ndarray:
        """ω(1{C=c}) 를 모든 c에 대해 (W × Y)"""
        if self.kind is LayerKind.LINEAR_PROB:
            return self.rows
        return softmax(self.rows)


def mix(layer: InferenceLayerSpec, first: np.ndarray, second: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """
    벡터화된 혼합 분포

    Args:
        first, second: world 인덱스 배열 (P,)
        lam: (P, L) 또는 (P,) 혼합 계수
    Returns:
        (P, L, Y) 또는 (P, Y) 라벨 분포
    """
    lam = np.asarray(lam, dtype=np.float64)
    a = layer.rows[first]
    b = layer.rows[second]
    if lam.ndim == 2:
        a = a[:, None, :]
        b = b[:, None, :]
    weight = lam[..., None]
    mixed = weight * a + (1.0 - weight) * b
    if layer.kind is LayerKind.LINEAR_PROB:
        return mixed
    return softmax(mixed)


def mixture_label_dist(layer: InferenceLayerSpec, c: Sequence[int], c2: Sequence[int], lam: float) -> np.ndarray:
    """
    ω(λ 1{C=c} + (1-λ) 1{C=c2})

    Raises:
        InputDomainError: λ가 (0, 1) 밖이거나 c = c2인 경우
    """
    if not 0.0 < lam < 1.0:
        raise InputDomainError("lambda must lie in (0, 1)", details={"lambda": lam})
    space = layer.space
    first = space.index_of(space.validate_world(c))
    second = space.index_of(space.validate_world(c2))
    if first == second:
        raise InputDomainError("mixture endpoints must differ", details={"world": list(c)})
    return mix(layer, np.asarray([first]), np.asarray([second]), np.asarray([lam]))[0]
