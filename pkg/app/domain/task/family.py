"""
α 패밀리 선언 (joint / factorized + tie-group)
"""

import enum
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from app.core.exceptions import TaskValidationError
from app.domain.task.space import ConceptSpace


class FamilyKind(str, enum.Enum):
    JOINT = "joint"
    FACTORIZED = "factorized"


@dataclass(frozen=True)
class AlphaFamily:
    """
    α 패밀리

    factorized인 경우 groups는 factor 인덱스의 분할이며,
    같은 그룹의 factor는 하나의 값 테이블을 공유합니다.
    """

    kind: FamilyKind
    groups: Tuple[Tuple[int, ...], ...] = ()

    @classmethod
    def joint(cls) -> "AlphaFamily":
        return cls(FamilyKind.JOINT)

    @classmethod
    def factorized(
        cls, space: ConceptSpace, ties: Optional[Sequence[Sequence[int]]] = None
    ) -> "AlphaFamily":
        """
        factorized 패밀리 생성

        Args:
            space: 개념 공간
            ties: tie-group 목록. 언급되지 않은 factor는 단독 그룹이 됩니다.

        Raises:
            TaskValidationError: 중복/범위 밖 인덱스, tie-group cardinality mismatch
        """
        ties = [tuple(int(i) for i in group) for group in (ties or []) if len(group) > 0]
        seen = set()
        for group in ties:
            for i in group:
                if not 0 <= i < space.k or i in seen:
                    raise TaskValidationError(
                        "tie-group은 factor 인덱스의 분할이어야 합니다",
                        details={"ties": [list(g) for g in ties]},
                    )
                seen.add(i)
            cards = {space.cardinalities[i] for i in group}
            if len(cards) > 1:
                raise TaskValidationError(
                    "tie-group cardinality mismatch",
                    details={"group": list(group), "cardinalities": sorted(cards)},
                )
        groups = [tuple(sorted(g)) for g in ties]
        groups += [(i,) for i in range(space.k) if i not in seen]
        groups.sort(key=lambda g: g[0])
        return cls(FamilyKind.FACTORIZED, tuple(groups))

    @classmethod
    def tied(cls, space: ConceptSpace) -> "AlphaFamily":
        return cls.factorized(space, [list(range(space.k))])

    @classmethod
    def untied(cls, space: ConceptSpace) -> "AlphaFamily":
        return cls.factorized(space, [])

    @property
    def is_joint(self) -> bool:
        return self.kind is FamilyKind.JOINT

    def group_of(self, factor: int) -> int:
        for gi, group in enumerate(self.groups):
            if factor in group:
                return gi
        raise KeyError(factor)

    def group_cardinality(self, space: ConceptSpace, group_index: int) -> int:
        return space.cardinalities[self.groups[group_index][0]]

    def describe(self) -> str:
        if self.is_joint:
            return "joint"
        if all(len(g) == 1 for g in self.groups):
            return "factorized-untied"
        return "factorized-tied" if len(self.groups) == 1 else "factorized-partially-tied"

    def canonical(self) -> dict:
        return {"kind": self.kind.value, "groups": [list(g) for g in self.groups]}
