"""
탐색 계획 (SearchPlan)

α의 테이블 항목을 탐색 변수로 펼치고, 변수 순서와 각 변수가 완성하는 support world를 미리 계산합니다.

- joint 패밀리: world마다 변수 하나, 값은 cell 인덱스
- factorized 패밀리: (tie-group, 값) 마다 변수 하나, 값은 같은 카디널리티의 값
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from app.domain.counting.report import SearchTarget
from app.domain.mitigations.models import MitigationSet
from app.domain.task.task_spec import TaskSpec

logger = logging.getLogger(__name__)


@dataclass
class SearchPlan:
    """
    백트래킹 탐색에 필요한 불변 데이터 (프로세스 간 pickle 가능)

    domains의 값 순서는 항등 값부터 시작하는 오프셋 순서이므로,
    자연 변수 순서에서 항등 α가 사전식으로 가장 먼저 나옵니다.
    """

    target: SearchTarget
    is_joint: bool
    total_worlds: int
    label_count: int
    cardinalities: Tuple[int, ...]
    strides: Tuple[int, ...]
    group_offsets: Tuple[int, ...]
    group_cards: Tuple[int, ...]
    domains: List[Tuple[int, ...]]
    order: List[int]
    completes: List[List[int]]
    world_terms: Dict[int, Tuple[Tuple[int, int], ...]]
    main_labels: List[int]
    head_labels: List[List[int]]
    world_heads: Dict[int, Tuple[int, ...]]
    pinned: List[bool]
    pinned_count: int
    reconstruction: bool
    inert_multiplier: int = 1
    inert_vars: List[int] = field(default_factory=list)

    @property
    def variable_count(self) -> int:
        return len(self.domains)

    def cell_of(self, world: int, values: Sequence[int]) -> int:
        return sum(values[var] * stride for var, stride in self.world_terms[world])

    def alpha_tables(self, values: Sequence[int]):
        """변수 값 -> (joint 테이블, factor 테이블) 중 하나"""
        if self.is_joint:
            return tuple(values), None
        tables = tuple(
            tuple(values[offset + v] for v in range(card))
            for offset, card in zip(self.group_offsets, self.group_cards)
        )
        return None, tables


def _offset_order(identity: int, card: int, allowed: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    values = range(card) if allowed is None else allowed
    return tuple(sorted(values, key=lambda x: (x - identity) % card))


def _supervision_pins(task: TaskSpec, ms: MitigationSet) -> Dict[int, Dict[int, int]]:
    """감독 world -> {factor: 값}"""
    pins: Dict[int, Dict[int, int]] = {}
    if not ms.has_supervision:
        return pins
    space = task.space
    sup = ms.concept_supervision
    for g in sup.worlds:
        world = space.world_at(g)
        pins[g] = {i: world[i] for i in sup.factors}
    return pins


def _joint_variables(task: TaskSpec, ms: MitigationSet):
    space = task.space
    W = space.total_worlds
    pins = _supervision_pins(task, ms)
    domains: List[Tuple[int, ...]] = []
    for g in range(W):
        if g in pins:
            fixed = pins[g]
            allowed = [
                c
                for c in range(W)
                if all(space.world_at(c)[i] == v for i, v in fixed.items())
            ]
            domains.append(_offset_order(g, W, allowed))
        else:
            domains.append(_offset_order(g, W))
    terms = {g: ((g, 1),) for g in task.support.indices}
    return domains, terms, (), ()


def _factorized_variables(task: TaskSpec, ms: MitigationSet):
    space = task.space
    family = task.alpha_family
    offsets: List[int] = []
    cards: List[int] = []
    total = 0
    for gi in range(len(family.groups)):
        card = family.group_cardinality(space, gi)
        offsets.append(total)
        cards.append(card)
        total += card

    fixed: Dict[int, int] = {}
    for g, components in _supervision_pins(task, ms).items():
        for i, v in components.items():
            fixed[offsets[family.group_of(i)] + v] = v

    domains: List[Tuple[int, ...]] = []
    for gi, card in enumerate(cards):
        for v in range(card):
            var = offsets[gi] + v
            domains.append((v,) if var in fixed else _offset_order(v, card))

    strides = space.strides
    group_index = [family.group_of(i) for i in range(space.k)]
    terms: Dict[int, Tuple[Tuple[int, int], ...]] = {}
    for g in task.support.indices:
        world = space.world_at(g)
        terms[g] = tuple(
            (offsets[group_index[i]] + world[i], strides[i]) for i in range(space.k)
        )
    return domains, terms, tuple(offsets), tuple(cards)


def _greedy_order(candidates: List[int], world_deps: Dict[int, Tuple[int, ...]], domains) -> List[int]:
    """
    완성시키는 world 수가 많은 변수부터 선택 (동률이면 도메인이 작은 것, 그다음 낮은 인덱스)
    """
    remaining = {g: len(deps) for g, deps in world_deps.items()}
    touching: Dict[int, List[int]] = {v: [] for v in candidates}
    for g, deps in world_deps.items():
        for v in deps:
            touching[v].append(g)
    unassigned = set(candidates)
    order: List[int] = []
    while unassigned:
        best = min(
            unassigned,
            key=lambda v: (
                -sum(1 for g in touching[v] if remaining[g] == 1),
                len(domains[v]),
                -len(touching[v]),
                v,
            ),
        )
        order.append(best)
        unassigned.discard(best)
        for g in touching[best]:
            remaining[g] -= 1
    return order


def build_plan(
    task: TaskSpec,
    ms: Optional[MitigationSet] = None,
    target: SearchTarget = SearchTarget.JRS,
    collapse_inert: bool = True,
    natural_order: bool = False,
) -> SearchPlan:
    """
    탐색 계획 생성

    Args:
        task: multitask가 이미 결합된 태스크
        ms: 미티게이션 (감독, distillation, reconstruction 사용)
        target: JRS이면 β*와 어긋나는 α도 탐색하고, RS이면 즉시 가지치기
        collapse_inert: support world에 나타나지 않는 변수를 곱셈 인자로 접을지
        natural_order: 변수 인덱스 순서로 탐색 (열거용)
    """
    ms = ms or MitigationSet.none()
    space = task.space
    W = space.total_worlds
    if task.alpha_family.is_joint:
        domains, terms, offsets, cards = _joint_variables(task, ms)
    else:
        domains, terms, offsets, cards = _factorized_variables(task, ms)

    world_deps = {g: tuple(sorted({var for var, _ in t})) for g, t in terms.items()}
    used = set()
    for deps in world_deps.values():
        used.update(deps)

    inert: List[int] = []
    multiplier = 1
    candidates = list(range(len(domains)))
    if collapse_inert:
        inert = [v for v in candidates if v not in used]
        for v in inert:
            multiplier *= len(domains[v])
        candidates = [v for v in candidates if v in used]

    if natural_order:
        order = candidates
    elif task.alpha_family.is_joint:
        # joint 변수는 각자 world 하나만 완성하므로 도메인 크기 순서면 충분
        order = sorted(candidates, key=lambda v: (len(domains[v]), v))
    else:
        order = _greedy_order(candidates, world_deps, domains)

    position = {v: pos for pos, v in enumerate(order)}
    completes: List[List[int]] = [[] for _ in order]
    for g, deps in world_deps.items():
        completes[max(position[v] for v in deps)].append(g)

    heads = task.auxiliary
    world_heads: Dict[int, List[int]] = {}
    for h, head in enumerate(heads):
        for g in head.worlds:
            world_heads.setdefault(g, []).append(h)

    pinned = [False] * W
    for c in ms.pinned_cells:
        pinned[c] = True

    plan = SearchPlan(
        target=SearchTarget(target),
        is_joint=task.alpha_family.is_joint,
        total_worlds=W,
        label_count=task.label_count,
        cardinalities=space.cardinalities,
        strides=space.strides,
        group_offsets=offsets,
        group_cards=cards,
        domains=[tuple(d) for d in domains],
        order=order,
        completes=completes,
        world_terms=terms,
        main_labels=[int(x) for x in task.knowledge.labels],
        head_labels=[[int(x) for x in head.knowledge.labels] for head in heads],
        world_heads={g: tuple(hs) for g, hs in world_heads.items()},
        pinned=pinned,
        pinned_count=sum(pinned),
        reconstruction=ms.reconstruction,
        inert_multiplier=multiplier,
        inert_vars=inert,
    )
    logger.debug(
        f"[SearchPlan] 계획 생성 - vars: {len(order)}, inert: {len(inert)}, "
        f"target: {plan.target.value}, joint: {plan.is_joint}"
    )
    return plan
