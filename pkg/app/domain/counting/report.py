"""
카운팅 결과 타입
"""

import enum
from dataclasses import dataclass, field
from typing import List, Optional

from app.domain.maps.intended import Subtrahend


class CountMethod(str, enum.Enum):
    AUTO = "auto"
    NAIVE = "naive"
    PRUNED = "pruned"
    FACTORED = "factored"


class SearchTarget(str, enum.Enum):
    """탐색 대상: JRS 허용 α (β 학습) 또는 RS 허용 α (β = β*)"""

    JRS = "jrs"
    RS = "rs"


class JrsMode(str, enum.Enum):
    REDUNDANT = "redundant"
    NONREDUNDANT = "nonredundant"


MASK_128 = (1 << 128) - 1


class CheckedAccumulator:
    """128비트 부호 없는 누산기 (넘치면 OverflowError)"""

    def __init__(self) -> None:
        self.value = 0

    def add(self, amount: int) -> None:
        total = self.value + amount
        if total > MASK_128 or amount < 0:
            raise OverflowError(f"128비트 누산 범위 초과: {total}")
        self.value = total


@dataclass
class PartitionTask:
    """분할 탐색 작업 단위"""

    partition_id: int
    prefix: tuple  # ((var, value), ...)
    budget: Optional[int] = None
    checked: bool = False


@dataclass
class PartitionResult:
    """분할 탐색 결과"""

    partition_id: int
    admissible: int = 0
    rs_admissible: int = 0
    weighted: int = 0
    nodes: int = 0
    exact: bool = True

    def merge(self, other: "PartitionResult") -> "PartitionResult":
        """덧셈 병합 (교환/결합 법칙 성립)"""
        return PartitionResult(
            partition_id=min(self.partition_id, other.partition_id),
            admissible=self.admissible + other.admissible,
            rs_admissible=self.rs_admissible + other.rs_admissible,
            weighted=self.weighted + other.weighted,
            nodes=self.nodes + other.nodes,
            exact=self.exact and other.exact,
        )


@dataclass
class CountReport:
    """
    카운팅 리포트

    모든 개수는 임의 정밀도 정수입니다. RS 전용 실행에서는 JRS 필드가 None 입니다.
    """

    task_digest: str
    task_name: Optional[str]
    family: str
    target: str
    method: str
    workers: int
    exact: bool
    rs_admissible_alpha_count: Optional[int] = None
    rs_count: Optional[int] = None
    rs_intended_count: Optional[int] = None
    admissible_alpha_count: Optional[int] = None
    optimal_pair_count: Optional[int] = None
    jrs_count_redundant: Optional[int] = None
    jrs_count_nonredundant: Optional[int] = None
    intended_subtrahend: Optional[Subtrahend] = None
    mitigations: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    nodes: int = 0
    elapsed_seconds: Optional[float] = None

    @property
    def headline(self) -> Optional[int]:
        if self.target == "rs":
            return self.rs_count
        if self.target == "jrs-nonredundant":
            return self.jrs_count_nonredundant
        return self.jrs_count_redundant
