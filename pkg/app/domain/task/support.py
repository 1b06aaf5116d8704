"""
Support 집합 supp(G)
"""

import bisect
import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import TaskValidationError
from app.domain.task.space import ConceptSpace, World


class SupportMode(str, enum.Enum):
    FULL = "full"
    INCLUDE = "include"
    EXCLUDE = "exclude"
    PRODUCT = "product"


@dataclass(frozen=True, eq=False)
class SupportSet:
    """
    support world 집합

    indices는 lexicographic world 인덱스의 정렬된 튜플입니다.
    |G| <= SUPPORT_BITSET_MAX 이면 멤버십을 bitset으로 조회합니다.
    """

    space: ConceptSpace
    mode: SupportMode
    indices: Tuple[int, ...]
    declared: Optional[tuple] = None  # 리스트/product 모드의 원본 선언
    _bitset: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.space.total_worlds <= settings.SUPPORT_BITSET_MAX:
            bits = np.zeros(self.space.total_worlds, dtype=bool)
            bits[list(self.indices)] = True
            bits.setflags(write=False)
            object.__setattr__(self, "_bitset", bits)

    # 생성자 ---------------------------------------------------------------

    @classmethod
    def full(cls, space: ConceptSpace) -> "SupportSet":
        return cls(space, SupportMode.FULL, tuple(range(space.total_worlds)))

    @classmethod
    def include(cls, space: ConceptSpace, worlds: Sequence[Sequence[int]]) -> "SupportSet":
        if not worlds:
            raise TaskValidationError("include 리스트는 비어 있을 수 없습니다")
        valid = [space.validate_world(w) for w in worlds]
        indices = tuple(sorted({space.index_of(w) for w in valid}))
        return cls(space, SupportMode.INCLUDE, indices, declared=tuple(valid))

    @classmethod
    def exclude(cls, space: ConceptSpace, worlds: Sequence[Sequence[int]]) -> "SupportSet":
        valid = [space.validate_world(w) for w in worlds]
        removed = {space.index_of(w) for w in valid}
        indices = tuple(i for i in range(space.total_worlds) if i not in removed)
        if not indices:
            raise TaskValidationError("support가 비었습니다 (모든 world가 제외됨)")
        return cls(space, SupportMode.EXCLUDE, indices, declared=tuple(valid))

    @classmethod
    def product(cls, space: ConceptSpace, values: Sequence[Sequence[int]]) -> "SupportSet":
        if len(values) != space.k:
            raise TaskValidationError(
                "product support는 factor별 값 목록이 필요합니다",
                details={"expected": space.k, "got": len(values)},
            )
        per_factor = []
        for i, (vals, card) in enumerate(zip(values, space.cardinalities)):
            chosen = sorted({int(v) for v in vals})
            if not chosen or any(not 0 <= v < card for v in chosen):
                raise TaskValidationError(
                    f"product support의 factor {i} 값이 유효하지 않습니다",
                    details={"factor": i, "values": list(vals), "cardinality": card},
                )
            per_factor.append(tuple(chosen))
        indices = tuple(space.index_of(w) for w in itertools.product(*per_factor))
        return cls(space, SupportMode.PRODUCT, tuple(sorted(indices)), declared=tuple(per_factor))

    # 조회 -----------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, index: int) -> bool:
        if self._bitset is not None:
            return bool(self._bitset[index])
        pos = bisect.bisect_left(self.indices, index)
        return pos < len(self.indices) and self.indices[pos] == index

    def contains_world(self, world: Sequence[int]) -> bool:
        return self.space.index_of(world) in self

    def iter_worlds(self) -> Iterator[World]:
        return (self.space.world_at(i) for i in self.indices)

    @property
    def is_full(self) -> bool:
        return len(self.indices) == self.space.total_worlds

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SupportSet):
            return NotImplemented
        return self.space == other.space and self.indices == other.indices

    def __hash__(self) -> int:
        return hash((self.space, self.indices))

    def canonical(self) -> list:
        return list(self.indices)
