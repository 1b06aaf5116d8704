"""
결정적 지식 테이블 (β*) 과 내장 지식
"""

import enum
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np

from app.core.exceptions import TaskValidationError
from app.domain.task.space import ConceptSpace

logger = logging.getLogger(__name__)


class BuiltinKnowledge(str, enum.Enum):
    """내장 지식 종류"""

    SUM = "sum"
    SUM_PARITY = "sum_parity"
    XOR = "xor"
    MODULAR_SUM = "modular_sum"


@dataclass(frozen=True, eq=False)
class KnowledgeTable:
    """
    world 인덱스 -> 라벨 인덱스의 전함수 테이블

    Args:
        space: 개념 공간
        label_count: |Y|
        labels: world 인덱스 순서의 라벨 배열 (길이 = total_worlds)
    """

    space: ConceptSpace
    label_count: int
    labels: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", np.array(self.labels, dtype=np.int64).reshape(-1))
        if self.label_count < 1:
            raise TaskValidationError("라벨 수는 1 이상이어야 합니다")
        if self.labels.shape != (self.space.total_worlds,):
            raise TaskValidationError(
                "knowledge not total",
                details={"expected": self.space.total_worlds, "got": int(self.labels.size)},
            )
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.label_count):
            raise TaskValidationError(
                "knowledge entry out of range",
                details={"label_count": self.label_count},
            )
        self.labels.setflags(write=False)

    def label_of(self, world: Sequence[int]) -> int:
        return int(self.labels[self.space.index_of(world)])

    def label_at(self, index: int) -> int:
        return int(self.labels[index])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeTable):
            return NotImplemented
        return (
            self.space == other.space
            and self.label_count == other.label_count
            and np.array_equal(self.labels, other.labels)
        )

    def __hash__(self) -> int:
        return hash((self.space, self.label_count, self.labels.tobytes()))

    def canonical(self) -> dict:
        return {"labels": self.label_count, "table": self.labels.tolist()}

    @classmethod
    def from_entries(
        cls, space: ConceptSpace, label_count: int, entries: Sequence[Sequence[int]]
    ) -> "KnowledgeTable":
        """[world..., label] 항목 목록으로부터 테이블 생성 (전함수 검사 포함)"""
        table: Dict[int, int] = {}
        for entry in entries:
            if len(entry) != space.k + 1:
                raise TaskValidationError(
                    "knowledge 항목 길이가 잘못되었습니다",
                    details={"entry": list(entry), "expected_length": space.k + 1},
                )
            world = space.validate_world(entry[:-1])
            label = int(entry[-1])
            if not 0 <= label < label_count:
                raise TaskValidationError(
                    "knowledge entry out of range",
                    details={"entry": list(entry), "label_count": label_count},
                )
            idx = space.index_of(world)
            if idx in table and table[idx] != label:
                raise TaskValidationError(
                    "knowledge 항목이 서로 모순됩니다", details={"world": list(world)}
                )
            table[idx] = label
        missing = [list(space.world_at(i)) for i in range(space.total_worlds) if i not in table]
        if missing:
            raise TaskValidationError(
                "knowledge not total", details={"missing_worlds": missing[:20]}
            )
        labels = np.array([table[i] for i in range(space.total_worlds)], dtype=np.int64)
        return cls(space, label_count, labels)


def builtin_label_count(
    name: BuiltinKnowledge, space: ConceptSpace, modulus: Optional[int] = None
) -> int:
    """내장 지식이 정의하는 |Y|"""
    name = BuiltinKnowledge(name)
    if name is BuiltinKnowledge.SUM:
        return sum(c - 1 for c in space.cardinalities) + 1
    if name is BuiltinKnowledge.MODULAR_SUM:
        if modulus is None or modulus < 2:
            raise TaskValidationError("modular_sum의 m은 2 이상이어야 합니다", details={"m": modulus})
        return modulus
    return 2


def builtin_knowledge(
    name: BuiltinKnowledge, space: ConceptSpace, modulus: Optional[int] = None
) -> KnowledgeTable:
    """
    내장 지식 테이블 생성

    Args:
        name: sum / sum_parity / xor / modular_sum
        space: 개념 공간 (값 인덱스를 숫자로 해석)
        modulus: modular_sum의 m

    Returns:
        KnowledgeTable

    Raises:
        TaskValidationError: 이진이 아닌 factor에 xor, m < 2
    """
    name = BuiltinKnowledge(name)
    if name is BuiltinKnowledge.XOR and any(c != 2 for c in space.cardinalities):
        raise TaskValidationError(
            "xor는 이진 factor에만 정의됩니다",
            details={"cardinalities": list(space.cardinalities)},
        )
    label_count = builtin_label_count(name, space, modulus)

    grids = np.indices(space.cardinalities).reshape(space.k, -1)
    totals = grids.sum(axis=0)
    if name is BuiltinKnowledge.SUM:
        labels = totals
    elif name is BuiltinKnowledge.MODULAR_SUM:
        labels = totals % label_count
    else:
        # 이진 factor에서 xor와 합의 패리티는 동일
        labels = totals % 2
    logger.debug(f"[Knowledge] 내장 지식 생성 - name: {name.value}, labels: {label_count}")
    return KnowledgeTable(space, label_count, labels.astype(np.int64))


def tabulate(space: ConceptSpace, label_count: int, fn) -> KnowledgeTable:
    """world -> label 함수로부터 테이블 생성"""
    labels = np.fromiter((fn(w) for w in space.iter_worlds()), dtype=np.int64, count=space.total_worlds)
    return KnowledgeTable(space, label_count, labels)
