"""
결정적 추론 맵 β: C -> Y
free 셀은 -1 로 표시합니다 (한 번도 예측되지 않는 개념 벡터).
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from app.core.exceptions import TaskValidationError
from app.domain.task.knowledge import KnowledgeTable
from app.domain.task.space import ConceptSpace

FREE = -1


@dataclass(frozen=True)
class BetaMap:
    """
    β ∈ V(B) (forced/free 셀 구분)

    Args:
        space: 개념 공간
        label_count: |Y|
        table: cell 인덱스 -> 라벨 (FREE = -1)
    """

    space: ConceptSpace
    label_count: int
    table: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.space.total_worlds:
            raise TaskValidationError("β 테이블 길이가 |C|와 다릅니다")
        for label in self.table:
            if label != FREE and not 0 <= label < self.label_count:
                raise TaskValidationError(
                    "β 라벨이 범위를 벗어났습니다", details={"label": label}
                )

    @classmethod
    def from_knowledge(cls, knowledge: KnowledgeTable) -> "BetaMap":
        return cls(knowledge.space, knowledge.label_count, tuple(int(v) for v in knowledge.labels))

    @classmethod
    def from_forced(
        cls, space: ConceptSpace, label_count: int, forced: Dict[int, int]
    ) -> "BetaMap":
        table = [FREE] * space.total_worlds
        for cell, label in forced.items():
            table[cell] = label
        return cls(space, label_count, tuple(table))

    @classmethod
    def from_entries(
        cls, space: ConceptSpace, label_count: int, entries: Iterable[Sequence[int]]
    ) -> "BetaMap":
        """[cell..., label] 항목 (언급되지 않은 셀은 free)"""
        forced: Dict[int, int] = {}
        for entry in entries:
            cell = space.index_of(space.validate_world(entry[:-1]))
            forced[cell] = int(entry[-1])
        return cls.from_forced(space, label_count, forced)

    def label(self, cell: int) -> Optional[int]:
        value = self.table[cell]
        return None if value == FREE else value

    def is_forced(self, cell: int) -> bool:
        return self.table[cell] != FREE

    @property
    def reach(self) -> Tuple[int, ...]:
        """forced 셀 집합"""
        return tuple(c for c, v in enumerate(self.table) if v != FREE)

    @property
    def free_count(self) -> int:
        return sum(1 for v in self.table if v == FREE)

    def with_forced(self, forced: Dict[int, int]) -> "BetaMap":
        table = list(self.table)
        for cell, label in forced.items():
            table[cell] = label
        return BetaMap(self.space, self.label_count, tuple(table))

    def canonical(self) -> dict:
        return {"labels": self.label_count, "table": list(self.table)}
