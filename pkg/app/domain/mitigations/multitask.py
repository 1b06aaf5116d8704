"""
Multi-task 결합
보조 태스크를 support world별 제약 마스크(AuxiliaryHead)로 태스크에 붙입니다.
"""

import logging
from collections import OrderedDict
from typing import Dict, List, Tuple

import numpy as np

from app.core.exceptions import TaskValidationError
from app.domain.mitigations.models import ExtraTask, MitigationSet
from app.domain.task.knowledge import KnowledgeTable
from app.domain.task.task_spec import AuxiliaryHead, TaskSpec

logger = logging.getLogger(__name__)


def dropped_multitask_worlds(task: TaskSpec, ms: MitigationSet) -> Dict[str, int]:
    """support 밖이라 무시되는 G^τ world 수 (태스크 이름별)"""
    dropped: Dict[str, int] = {}
    for extra in ms.multitask:
        n = sum(1 for g in extra.worlds if g not in task.support)
        if n:
            dropped[extra.name] = dropped.get(extra.name, 0) + n
    return dropped


def _merge(name: str, extras: List[ExtraTask]) -> Tuple[KnowledgeTable, Tuple[int, ...]]:
    first = extras[0]
    labels = np.array(first.knowledge.labels)
    worlds = set(first.worlds)
    for other in extras[1:]:
        if other.label_count != first.label_count:
            raise TaskValidationError(
                "inconsistent overlapping extra tasks",
                details={"task": name, "reason": "label count differs"},
            )
        overlap = sorted(worlds & set(other.worlds))
        if overlap and not np.array_equal(labels[overlap], other.knowledge.labels[overlap]):
            raise TaskValidationError(
                "inconsistent overlapping extra tasks",
                details={"task": name, "reason": "labels differ on shared worlds"},
            )
        only_other = sorted(set(other.worlds) - worlds)
        labels[only_other] = other.knowledge.labels[only_other]
        worlds |= set(other.worlds)
    knowledge = KnowledgeTable(first.knowledge.space, first.label_count, labels)
    return knowledge, tuple(sorted(worlds))


def conjoin_multitask(task: TaskSpec, ms: MitigationSet) -> TaskSpec:
    """
    보조 태스크를 결합한 파생 태스크

    이름이 같은 보조 태스크는 하나의 헤드로 합쳐지며, 공유 world에서 라벨이 다르면 오류입니다.
    G^τ는 support와 교집합을 취하고, 비면 헤드를 만들지 않습니다.

    Raises:
        TaskValidationError: inconsistent overlapping extra tasks
    """
    if not ms.multitask:
        return task
    grouped: "OrderedDict[str, List[ExtraTask]]" = OrderedDict()
    for extra in ms.multitask:
        grouped.setdefault(extra.name, []).append(extra)

    heads = list(task.auxiliary)
    for name, extras in grouped.items():
        knowledge, worlds = _merge(name, extras)
        kept = tuple(g for g in worlds if g in task.support)
        if len(kept) != len(worlds):
            logger.warning(
                f"[Multitask] support 밖 world 무시 - task: {name}, dropped: {len(worlds) - len(kept)}"
            )
        if not kept:
            continue
        heads.append(AuxiliaryHead(name=name, knowledge=knowledge, worlds=kept))
    return task.with_auxiliary(tuple(heads))
