"""
결정적 개념 맵 α: G -> C
joint 테이블 또는 tie-group별 값 테이블로 표현합니다.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import TaskValidationError
from app.domain.task.family import AlphaFamily
from app.domain.task.space import ConceptSpace, World


@dataclass(frozen=True)
class AlphaMap:
    """
    α ∈ V(A)

    Args:
        space: 개념 공간
        family: 소속 패밀리
        joint: world 인덱스 -> cell 인덱스 (joint 표현)
        tables: 그룹별 값 -> 값 테이블 (factor 표현)
    """

    space: ConceptSpace
    family: AlphaFamily
    joint: Optional[Tuple[int, ...]] = None
    tables: Optional[Tuple[Tuple[int, ...], ...]] = None
    _expanded: list = field(default_factory=list, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if (self.joint is None) == (self.tables is None):
            raise TaskValidationError("AlphaMap은 joint 또는 tables 중 하나만 가져야 합니다")
        if self.joint is not None:
            if len(self.joint) != self.space.total_worlds or any(
                not 0 <= c < self.space.total_worlds for c in self.joint
            ):
                raise TaskValidationError("joint α 테이블이 전함수가 아닙니다")
        else:
            if self.family.is_joint or len(self.tables) != len(self.family.groups):
                raise TaskValidationError("factor 테이블 수가 tie-group 수와 다릅니다")
            for gi, table in enumerate(self.tables):
                card = self.family.group_cardinality(self.space, gi)
                if len(table) != card or any(not 0 <= v < card for v in table):
                    raise TaskValidationError(
                        "factor α 테이블이 전함수가 아닙니다", details={"group": gi}
                    )

    # 생성자 ---------------------------------------------------------------

    @classmethod
    def identity(cls, space: ConceptSpace, family: AlphaFamily) -> "AlphaMap":
        if family.is_joint:
            return cls(space, family, joint=tuple(range(space.total_worlds)))
        tables = tuple(
            tuple(range(family.group_cardinality(space, gi))) for gi in range(len(family.groups))
        )
        return cls(space, family, tables=tables)

    @classmethod
    def from_tables(
        cls, space: ConceptSpace, family: AlphaFamily, tables: Sequence[Sequence[int]]
    ) -> "AlphaMap":
        return cls(space, family, tables=tuple(tuple(int(v) for v in t) for t in tables))

    @classmethod
    def from_joint(cls, space: ConceptSpace, cells: Sequence[int]) -> "AlphaMap":
        return cls(space, AlphaFamily.joint(), joint=tuple(int(c) for c in cells))

    @classmethod
    def from_function(cls, space: ConceptSpace, fn: Callable[[World], Sequence[int]]) -> "AlphaMap":
        cells = tuple(space.index_of(fn(w)) for w in space.iter_worlds())
        return cls.from_joint(space, cells)

    # 적용 -----------------------------------------------------------------

    @property
    def is_factored(self) -> bool:
        return self.tables is not None

    def apply(self, g: Sequence[int]) -> World:
        if self.joint is not None:
            return self.space.world_at(self.joint[self.space.index_of(g)])
        return tuple(
            self.tables[self.family.group_of(i)][int(v)] for i, v in enumerate(g)
        )

    def joint_table(self) -> Tuple[int, ...]:
        """factor 표현을 joint 테이블로 확장 (순수 함수, 캐시)"""
        if self.joint is not None:
            return self.joint
        if not self._expanded:
            worlds = np.indices(self.space.cardinalities).reshape(self.space.k, -1)
            images = np.empty_like(worlds)
            for i in range(self.space.k):
                table = np.asarray(self.tables[self.family.group_of(i)])
                images[i] = table[worlds[i]]
            cells = np.ravel_multi_index(tuple(images), self.space.cardinalities)
            self._expanded.append(tuple(int(c) for c in cells))
        return self._expanded[0]

    def expand(self) -> "AlphaMap":
        return AlphaMap.from_joint(self.space, self.joint_table())

    def cell_of(self, world_index: int) -> int:
        return self.joint_table()[world_index]

    def canonical(self) -> dict:
        if self.tables is not None:
            return {"tables": [list(t) for t in self.tables]}
        return {"joint": list(self.joint)}


def apply_alpha(alpha: AlphaMap, g: Sequence[int]) -> World:
    """α(g) 계산 (factor 표현이면 c_i = table_{group(i)}(g_i))"""
    return alpha.apply(g)
