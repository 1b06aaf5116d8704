"""
벤치마크 태스크 빌더
숫자 0..N 두 개를 입력으로 하는 sum-parity / addition 계열 태스크를 만듭니다.
"""

from typing import List, Tuple

from app.domain.maps.alpha import AlphaMap
from app.domain.task.family import AlphaFamily
from app.domain.task.knowledge import BuiltinKnowledge, builtin_knowledge
from app.domain.task.space import ConceptSpace, Factor, World
from app.domain.task.support import SupportSet
from app.domain.task.task_spec import TaskSpec


def digit_space(n: int, digits: int = 2) -> ConceptSpace:
    """값 0..n 인 숫자 factor digits개"""
    return ConceptSpace(tuple(Factor(f"d{i + 1}", n + 1) for i in range(digits)))


def _family(space: ConceptSpace, family: str) -> AlphaFamily:
    if family == "joint":
        return AlphaFamily.joint()
    if family == "tied":
        return AlphaFamily.tied(space)
    if family == "untied":
        return AlphaFamily.untied(space)
    raise ValueError(f"알 수 없는 패밀리: {family}")


def sum_parity_task(n: int, family: str = "tied", digits: int = 2) -> TaskSpec:
    space = digit_space(n, digits)
    return TaskSpec(
        space=space,
        label_count=2,
        knowledge=builtin_knowledge(BuiltinKnowledge.SUM_PARITY, space),
        support=SupportSet.full(space),
        alpha_family=_family(space, family),
        name=f"sum-parity-N{n}-{family}",
    )


def addition_task(n: int, family: str = "tied", digits: int = 2) -> TaskSpec:
    space = digit_space(n, digits)
    knowledge = builtin_knowledge(BuiltinKnowledge.SUM, space)
    return TaskSpec(
        space=space,
        label_count=knowledge.label_count,
        knowledge=knowledge,
        support=SupportSet.full(space),
        alpha_family=_family(space, family),
        name=f"addition-N{n}-{family}",
    )


def even_odd_pairs(n: int) -> List[World]:
    """첫 숫자가 짝수, 둘째 숫자가 홀수인 world 목록"""
    return [(a, b) for a in range(0, n + 1, 2) for b in range(1, n + 1, 2)]


def biased_sum_parity_task(n: int, family: str = "tied") -> TaskSpec:
    """(짝수, 홀수) 쌍이 학습 support에서 빠진 sum-parity 태스크"""
    space = digit_space(n)
    excluded = even_odd_pairs(n)
    support = SupportSet.exclude(space, excluded) if excluded else SupportSet.full(space)
    return TaskSpec(
        space=space,
        label_count=2,
        knowledge=builtin_knowledge(BuiltinKnowledge.SUM_PARITY, space),
        support=support,
        alpha_family=_family(space, family),
        name=f"biased-sum-parity-N{n}-{family}",
    )


def parity_collapse_table(card: int) -> Tuple[int, ...]:
    """숫자 값을 패리티 비트로 보내는 factor 테이블 (g -> g mod 2)"""
    return tuple(v % 2 for v in range(card))


def parity_shortcut(task: TaskSpec) -> AlphaMap:
    """
    각 숫자를 패리티 비트로 접는 tied α

    sum-parity 계열에서는 항상 최적이지만, biased support에서는 (짝수, 홀수) 셀이 도달되지 않아
    β가 그 셀에서 자유롭습니다 (학습된 β가 뺄셈처럼 동작할 수 있는 자리).
    """
    if task.alpha_family.is_joint or len(task.alpha_family.groups) != 1:
        raise ValueError("parity_shortcut 은 tied 패밀리에서만 정의됩니다")
    card = task.space.cardinalities[0]
    return AlphaMap.from_tables(task.space, task.alpha_family, [parity_collapse_table(card)])
