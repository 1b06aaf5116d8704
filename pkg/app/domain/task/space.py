"""
개념 공간 (ConceptSpace)
factor별 카디널리티로 정의되며, world는 혼합 진법(lexicographic) 인덱스로 다룹니다.
"""

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence, Tuple

from app.core.exceptions import TaskValidationError

World = Tuple[int, ...]


@dataclass(frozen=True)
class Factor:
    """개념 factor (이름 + 카디널리티)"""

    name: str
    cardinality: int


@dataclass(frozen=True)
class ConceptSpace:
    """
    개념 공간 G = C

    world 인덱스는 첫 번째 factor가 최상위 자리인 혼합 진법입니다.
    """

    factors: Tuple[Factor, ...]

    def __post_init__(self) -> None:
        if len(self.factors) < 1:
            raise TaskValidationError("개념 공간에는 최소 1개의 factor가 필요합니다")
        names = [f.name for f in self.factors]
        if len(set(names)) != len(names):
            raise TaskValidationError(
                "factor 이름이 중복되었습니다", details={"names": names}
            )
        for f in self.factors:
            if f.cardinality < 1:
                raise TaskValidationError(
                    f"factor 카디널리티는 1 이상이어야 합니다: {f.name}",
                    details={"factor": f.name, "cardinality": f.cardinality},
                )

    @classmethod
    def from_cardinalities(cls, cards: Sequence[int], prefix: str = "g") -> "ConceptSpace":
        return cls(tuple(Factor(f"{prefix}{i + 1}", int(c)) for i, c in enumerate(cards)))

    @property
    def k(self) -> int:
        return len(self.factors)

    @cached_property
    def cardinalities(self) -> Tuple[int, ...]:
        return tuple(f.cardinality for f in self.factors)

    @cached_property
    def total_worlds(self) -> int:
        # math.prod는 파이썬 정수이므로 오버플로가 없음
        return math.prod(self.cardinalities)

    @cached_property
    def strides(self) -> Tuple[int, ...]:
        strides = []
        acc = 1
        for card in reversed(self.cardinalities):
            strides.append(acc)
            acc *= card
        return tuple(reversed(strides))

    def is_valid_world(self, world: Sequence[int]) -> bool:
        if len(world) != self.k:
            return False
        return all(0 <= int(v) < c for v, c in zip(world, self.cardinalities))

    def validate_world(self, world: Sequence[int]) -> World:
        """world 검증 후 정수 튜플로 반환"""
        if not self.is_valid_world(world):
            raise TaskValidationError(
                f"유효하지 않은 world: {list(world)}",
                details={"world": list(world), "cardinalities": list(self.cardinalities)},
            )
        return tuple(int(v) for v in world)

    def index_of(self, world: Sequence[int]) -> int:
        return sum(int(v) * s for v, s in zip(world, self.strides))

    def world_at(self, index: int) -> World:
        values = []
        for s, card in zip(self.strides, self.cardinalities):
            values.append((index // s) % card)
        return tuple(values)

    def iter_worlds(self) -> Iterator[World]:
        """모든 world를 lexicographic 순서로 생성"""
        return itertools.product(*(range(c) for c in self.cardinalities))

    def canonical(self) -> list:
        return [[f.name, f.cardinality] for f in self.factors]
