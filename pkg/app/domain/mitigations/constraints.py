"""
미티게이션 술어
탐색 엔진은 같은 제약을 탐색 중에 직접 적용하고, 이 술어들은 naive 오라클과 검증에서 사용합니다.
"""

from typing import Dict, Optional

from app.domain.maps.alpha import AlphaMap
from app.domain.maps.beta import FREE, BetaMap
from app.domain.mitigations.models import MitigationSet
from app.domain.task.task_spec import TaskSpec


def admits_concept_supervision(alpha: AlphaMap, ms: MitigationSet) -> bool:
    """감독된 factor 성분이 감독된 world에서 그대로 재현되는지"""
    sup = ms.concept_supervision
    if sup is None or not sup.factors:
        return True
    space = alpha.space
    table = alpha.joint_table()
    for g in sup.worlds:
        world = space.world_at(g)
        image = space.world_at(table[g])
        if any(image[i] != world[i] for i in sup.factors):
            return False
    return True


def apply_distillation(beta: BetaMap, task: TaskSpec, ms: MitigationSet) -> Optional[BetaMap]:
    """
    G^K 셀의 free 칸을 β*로 채운 β를 반환 (forced 칸이 β*와 다르면 None)
    """
    if ms.distillation is None:
        return beta
    forced: Dict[int, int] = {}
    for c in ms.distillation.cells:
        target = task.knowledge.label_at(c)
        current = beta.table[c]
        if current == FREE:
            forced[c] = target
        elif current != target:
            return None
    return beta.with_forced(forced) if forced else beta


def admits_distillation(beta: BetaMap, task: TaskSpec, ms: MitigationSet) -> bool:
    return apply_distillation(beta, task, ms) is not None


def admits_reconstruction(alpha: AlphaMap, task: TaskSpec) -> bool:
    """α가 support에서 단사인지 (support-only 해석)"""
    table = alpha.joint_table()
    images = [table[g] for g in task.support.indices]
    return len(set(images)) == len(images)


def admits_multitask(alpha: AlphaMap, task: TaskSpec) -> bool:
    """
    학습되는 보조 헤드가 존재하는지: 각 헤드의 G^τ world 중 보조 라벨이 다른 둘을
    같은 셀로 보내지 않아야 합니다.
    """
    table = alpha.joint_table()
    for head in task.auxiliary:
        seen: Dict[int, int] = {}
        for g in head.worlds:
            label = head.knowledge.label_at(g)
            if seen.setdefault(table[g], label) != label:
                return False
    return True


def admits_multitask_fixed(alpha: AlphaMap, task: TaskSpec) -> bool:
    """보조 지식이 고정된 경우(RS): K_τ(α(g)) = K_τ(g) on G^τ"""
    table = alpha.joint_table()
    for head in task.auxiliary:
        labels = head.knowledge.labels
        if any(labels[table[g]] != labels[g] for g in head.worlds):
            return False
    return True


def admits_alpha(alpha: AlphaMap, task: TaskSpec, ms: MitigationSet, fixed_heads: bool = False) -> bool:
    """α 쪽 제약 (감독, reconstruction, multitask) 을 모두 만족하는지"""
    if not admits_concept_supervision(alpha, ms):
        return False
    if ms.reconstruction and not admits_reconstruction(alpha, task):
        return False
    if fixed_heads:
        return admits_multitask_fixed(alpha, task)
    return admits_multitask(alpha, task)
