"""
결정적 최적해 판정
(β ∘ α)(g) = β*(g) 가 모든 support world에서 성립하면 최적입니다.
"""

from typing import Dict, Optional, Sequence

from app.core.exceptions import InputDomainError
from app.domain.maps.alpha import AlphaMap
from app.domain.maps.beta import FREE, BetaMap
from app.domain.task.task_spec import TaskSpec


def reach(alpha: AlphaMap, task: TaskSpec) -> Sequence[int]:
    """support 이미지 (정렬된 cell 인덱스)"""
    table = alpha.joint_table()
    return sorted({table[g] for g in task.support.indices})


def is_optimal_pair(alpha: AlphaMap, beta: BetaMap, task: TaskSpec) -> bool:
    """
    (α, β)의 최적성 판정

    Raises:
        InputDomainError: β가 도달 셀에서 free인 경우
    """
    table = alpha.joint_table()
    knowledge = task.knowledge.labels
    for g in task.support.indices:
        c = table[g]
        label = beta.table[c]
        if label == FREE:
            raise InputDomainError(
                "beta undefined on a reached cell",
                details={"cell": list(task.space.world_at(c))},
            )
        if label != knowledge[g]:
            return False
    return True


def forced_beta(
    alpha: AlphaMap, task: TaskSpec, pinned: Optional[Dict[int, int]] = None
) -> Optional[BetaMap]:
    """
    α가 강제하는 β (reach 셀만 forced, 나머지는 free)

    Args:
        pinned: 추가로 고정할 셀 -> 라벨 (distillation)

    Returns:
        BetaMap, 또는 α가 서로 다른 라벨의 world를 합치면 None
    """
    table = alpha.joint_table()
    knowledge = task.knowledge.labels
    forced: Dict[int, int] = dict(pinned or {})
    for g in task.support.indices:
        c = table[g]
        label = int(knowledge[g])
        if c in forced and forced[c] != label:
            return None
        forced[c] = label
    return BetaMap.from_forced(task.space, task.label_count, forced)
