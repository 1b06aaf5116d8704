"""
Intended semantics 쌍의 개수

- intended_pair_count: 제약 없는 joint 패밀리의 닫힌 식 C[G]
- representable_intended_count: 선언된 α 패밀리와 미티게이션 아래에서
  증인을 갖는 서로 다른 최적 쌍의 수
"""

import enum
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import EnumerationCapError
from app.domain.maps.witness import (
    IntendedWitness,
    cardinality_preserving_perms,
    invert_witness,
)
from app.domain.mitigations.models import MitigationSet
from app.domain.task.task_spec import TaskSpec

logger = logging.getLogger(__name__)


class SubtrahendFormula(str, enum.Enum):
    """JRS 합에서 빼는 항의 출처"""

    CLOSED_FORM = "closed_form"
    FAMILY_AWARE = "family_aware"
    COROLLARY = "corollary"


class SubtrahendPolicy(str, enum.Enum):
    AUTO = "auto"
    CLOSED_FORM = "closed_form"
    FAMILY_AWARE = "family_aware"
    COROLLARY = "corollary"


@dataclass(frozen=True)
class Subtrahend:
    value: int
    formula: SubtrahendFormula


def intended_pair_count(task: TaskSpec) -> int:
    """C[G] = Π_{ξ} m(ξ)! × Π_i |G_i|!"""
    cards = task.space.cardinalities
    multiplicities = Counter(cards)
    value = 1
    for m in multiplicities.values():
        value *= math.factorial(m)
    for card in cards:
        value *= math.factorial(card)
    return value


# 패밀리에서 표현 가능한 증인 ---------------------------------------------------


def _psi_units(task: TaskSpec) -> List[Tuple[Tuple[int, ...], int]]:
    """ψ를 독립적으로 고르는 단위 (위치 묶음, 카디널리티)"""
    space = task.space
    if task.alpha_family.is_joint:
        return [((j,), space.cardinalities[j]) for j in range(space.k)]
    return [
        (group, space.cardinalities[group[0]]) for group in task.alpha_family.groups
    ]


def _representable_perms(task: TaskSpec) -> List[Tuple[int, ...]]:
    if task.alpha_family.is_joint:
        return list(cardinality_preserving_perms(task.space, fix_singletons=True))
    # factor 테이블은 성분을 섞을 수 없으므로 π = id 뿐
    return [tuple(range(task.space.k))]


def witness_space_size(task: TaskSpec) -> int:
    size = len(_representable_perms(task))
    for _, card in _psi_units(task):
        size *= math.factorial(card)
    return size


def iter_representable_witnesses(task: TaskSpec) -> Iterator[IntendedWitness]:
    """패밀리가 표현하는 서로 다른 intended α의 증인을 모두 생성"""
    units = _psi_units(task)
    k = task.space.k
    for perm in _representable_perms(task):
        for choice in itertools.product(*(itertools.permutations(range(card)) for _, card in units)):
            psi: List[Tuple[int, ...]] = [()] * k
            for (positions, _), bijection in zip(units, choice):
                for j in positions:
                    psi[j] = bijection
            yield IntendedWitness(perm, tuple(psi))


def _supervision_closed_form(task: TaskSpec, ms: MitigationSet) -> int:
    """
    감독만 있는 경우: π별로 ψ 단위의 부분 전단사 제약 r개를 세고 (card - r)! 를 곱함
    """
    sup = ms.concept_supervision
    space = task.space
    supervised = set(sup.factors)
    worlds = [space.world_at(g) for g in sup.worlds]
    total = 0
    for perm in _representable_perms(task):
        inverse = [0] * space.k
        for i, j in enumerate(perm):
            inverse[j] = i
        product = 1
        for positions, card in _psi_units(task):
            mapping: Dict[int, int] = {}
            consistent = True
            for j in positions:
                if j not in supervised:
                    continue
                i = inverse[j]
                for w in worlds:
                    src, dst = w[i], w[j]
                    if mapping.setdefault(src, dst) != dst:
                        consistent = False
            if not consistent or len(set(mapping.values())) != len(mapping):
                product = 0
                break
            product *= math.factorial(card - len(mapping))
        total += product
    return total


def _enumerate_admitted(
    task: TaskSpec,
    predicate: Callable[[IntendedWitness, np.ndarray], bool],
    cap: Optional[int],
) -> int:
    cap = settings.INTENDED_ENUM_CAP if cap is None else cap
    size = witness_space_size(task)
    if size > cap:
        raise EnumerationCapError(
            "enumeration cap exceeded",
            details={"witness_space": str(size), "cap": cap},
        )
    count = 0
    for witness in iter_representable_witnesses(task):
        if predicate(witness, witness.cell_table(task.space)):
            count += 1
    return count


def _supervision_predicate(task: TaskSpec, ms: MitigationSet):
    sup = ms.concept_supervision
    if sup is None or not sup.factors or not sup.worlds:
        return lambda cells: True
    space = task.space
    worlds = np.asarray(sup.worlds, dtype=np.int64)
    truth = np.stack(np.unravel_index(worlds, space.cardinalities))[list(sup.factors)]

    def check(cells: np.ndarray) -> bool:
        images = np.stack(np.unravel_index(cells[worlds], space.cardinalities))
        return bool(np.array_equal(images[list(sup.factors)], truth))

    return check


def representable_intended_count(
    task: TaskSpec, ms: Optional[MitigationSet] = None, cap: Optional[int] = None
) -> int:
    """
    패밀리와 미티게이션 아래에서 증인을 갖는 서로 다른 최적 쌍의 수

    각 intended α에는 forced 셀에서 β*∘T^{-1}와 일치하는 β가 정확히 하나 대응하므로
    intended α의 수를 셉니다. reconstruction과 multitask는 전단사 T를 배제하지 않습니다.

    Raises:
        EnumerationCapError: distillation이 있어 열거가 필요하고 증인 공간이 cap을 넘는 경우
    """
    ms = ms or MitigationSet.none()
    pinned = sorted(set(ms.pinned_cells))
    if not pinned:
        if ms.has_supervision:
            return _supervision_closed_form(task, ms)
        return witness_space_size(task)

    knowledge = task.knowledge.labels
    pinned_arr = np.asarray(pinned, dtype=np.int64)
    pinned_labels = knowledge[pinned_arr]
    supervised = _supervision_predicate(task, ms)

    def admitted(witness: IntendedWitness, cells: np.ndarray) -> bool:
        if not supervised(cells):
            return False
        inverse = invert_witness(witness).cell_table(task.space)
        return bool(np.array_equal(knowledge[inverse[pinned_arr]], pinned_labels))

    return _enumerate_admitted(task, admitted, cap)


def rs_intended_count(
    task: TaskSpec, ms: Optional[MitigationSet] = None, cap: Optional[int] = None
) -> int:
    """
    β = β* 로 고정했을 때 허용되는 α 중 증인을 갖는 것의 수

    보조 헤드(task.auxiliary)는 지식이 고정된 것으로 취급합니다.
    """
    ms = ms or MitigationSet.none()
    knowledge = task.knowledge.labels
    support = np.asarray(task.support.indices, dtype=np.int64)
    support_labels = knowledge[support]
    heads = [
        (h.knowledge.labels, np.asarray(h.worlds, dtype=np.int64)) for h in task.auxiliary if h.worlds
    ]
    supervised = _supervision_predicate(task, ms)

    def admitted(witness: IntendedWitness, cells: np.ndarray) -> bool:
        if not np.array_equal(knowledge[cells[support]], support_labels):
            return False
        for labels, worlds in heads:
            if not np.array_equal(labels[cells[worlds]], labels[worlds]):
                return False
        return supervised(cells)

    return _enumerate_admitted(task, admitted, cap)


def select_subtrahend(
    task: TaskSpec,
    ms: Optional[MitigationSet] = None,
    policy: SubtrahendPolicy = SubtrahendPolicy.AUTO,
    cap: Optional[int] = None,
) -> Subtrahend:
    """
    JRS 합에서 뺄 항 선택

    auto: distillation이 모든 셀을 고정하면 corollary(1),
          미티게이션 없는 joint 패밀리면 C[G], 그 외에는 family-aware
    """
    ms = ms or MitigationSet.none()
    policy = SubtrahendPolicy(policy)
    if policy is SubtrahendPolicy.AUTO:
        if ms.pins_every_cell(task.space):
            policy = SubtrahendPolicy.COROLLARY
        elif task.alpha_family.is_joint and ms.is_empty and not task.auxiliary:
            policy = SubtrahendPolicy.CLOSED_FORM
        else:
            policy = SubtrahendPolicy.FAMILY_AWARE
    if policy is SubtrahendPolicy.COROLLARY:
        return Subtrahend(1, SubtrahendFormula.COROLLARY)
    if policy is SubtrahendPolicy.CLOSED_FORM:
        return Subtrahend(intended_pair_count(task), SubtrahendFormula.CLOSED_FORM)
    value = representable_intended_count(task, ms, cap)
    logger.debug(f"[Intended] family-aware subtrahend - value: {value}")
    return Subtrahend(value, SubtrahendFormula.FAMILY_AWARE)
