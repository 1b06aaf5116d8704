"""
naive 오라클
V(A) × V(B) 를 그대로 이중 순회하며 최적 쌍을 셉니다. 작은 태스크의 교차 검증용입니다.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional

from app.core.config import settings
from app.core.exceptions import BudgetExceededError
from app.domain.maps.alpha import AlphaMap
from app.domain.maps.beta import BetaMap
from app.domain.maps.optimality import is_optimal_pair
from app.domain.mitigations.constraints import admits_alpha, admits_distillation
from app.domain.mitigations.models import MitigationSet
from app.domain.task.task_spec import TaskSpec

logger = logging.getLogger(__name__)


@dataclass
class NaiveCount:
    optimal_pairs: int
    admissible_alphas: int
    rs_admissible_alphas: int


def family_size(task: TaskSpec) -> int:
    """|V(A)|"""
    space = task.space
    family = task.alpha_family
    if family.is_joint:
        return space.total_worlds**space.total_worlds
    return math.prod(
        card**card
        for card in (family.group_cardinality(space, gi) for gi in range(len(family.groups)))
    )


def iter_family(task: TaskSpec) -> Iterator[AlphaMap]:
    """패밀리의 모든 α (테이블 사전식 순서)"""
    space = task.space
    family = task.alpha_family
    if family.is_joint:
        W = space.total_worlds
        for table in itertools.product(range(W), repeat=W):
            yield AlphaMap(space, family, joint=table)
        return
    cards = [family.group_cardinality(space, gi) for gi in range(len(family.groups))]
    per_group = [list(itertools.product(range(card), repeat=card)) for card in cards]
    for tables in itertools.product(*per_group):
        yield AlphaMap(space, family, tables=tuple(tables))


def _check_budget(task: TaskSpec, budget: Optional[int]) -> None:
    budget = settings.NAIVE_PAIR_BUDGET if budget is None else budget
    pairs = family_size(task) * task.label_count**task.space.total_worlds
    if pairs > budget:
        raise BudgetExceededError(
            "space too large for the naive oracle",
            details={"pairs": str(pairs), "budget": budget},
        )


def naive_count_pairs(
    task: TaskSpec, ms: Optional[MitigationSet] = None, budget: Optional[int] = None
) -> NaiveCount:
    """
    모든 (α, β) 쌍을 순회하여 최적 쌍의 수를 셈

    task는 multitask가 결합된 상태여야 합니다. 보조 헤드는 학습되는 것으로 보고
    (존재 조건) admits_alpha로 검사합니다.

    Raises:
        BudgetExceededError: |V(A)| × |V(B)| 가 budget을 넘는 경우
    """
    ms = ms or MitigationSet.none()
    _check_budget(task, budget)
    space = task.space
    W = space.total_worlds
    betas = [
        BetaMap(space, task.label_count, table)
        for table in itertools.product(range(task.label_count), repeat=W)
    ]
    if ms.pinned_cells:
        betas = [beta for beta in betas if admits_distillation(beta, task, ms)]
    knowledge_beta = BetaMap.from_knowledge(task.knowledge)

    pairs = admissible = rs_admissible = 0
    for alpha in iter_family(task):
        if admits_alpha(alpha, task, ms, fixed_heads=True) and is_optimal_pair(alpha, knowledge_beta, task):
            rs_admissible += 1
        if not admits_alpha(alpha, task, ms):
            continue
        optimal = sum(1 for beta in betas if is_optimal_pair(alpha, beta, task))
        pairs += optimal
        if optimal:
            admissible += 1
    logger.debug(f"[Naive] 순회 완료 - pairs: {pairs}, admissible: {admissible}")
    return NaiveCount(optimal_pairs=pairs, admissible_alphas=admissible, rs_admissible_alphas=rs_admissible)


def naive_rs_count(task: TaskSpec, ms: Optional[MitigationSet] = None, budget: Optional[int] = None) -> int:
    """β = β* 로 고정한 RS 허용 α 수 - 1"""
    ms = ms or MitigationSet.none()
    budget = settings.NAIVE_PAIR_BUDGET if budget is None else budget
    if family_size(task) > budget:
        raise BudgetExceededError(
            "space too large for the naive oracle",
            details={"alphas": str(family_size(task)), "budget": budget},
        )
    knowledge_beta = BetaMap.from_knowledge(task.knowledge)
    count = sum(
        1
        for alpha in iter_family(task)
        if admits_alpha(alpha, task, ms, fixed_heads=True) and is_optimal_pair(alpha, knowledge_beta, task)
    )
    return count - 1
