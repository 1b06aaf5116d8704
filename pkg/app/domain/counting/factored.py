"""
대칭성 기반 정확 카운팅 (factored 방식)

셀의 정체성이 아니라 분할 구조만 허용성을 결정하는 경우에 적용합니다.

- joint 패밀리: 라벨 클래스별 셀 집합 크기에 대한 DP (전사 함수 수 × 이항 계수)
- factorized 패밀리: 그룹별 값 분할(커널)을 열거하고 하강 계승을 곱함
"""

import itertools
import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.domain.mitigations.models import MitigationSet
from app.domain.task.task_spec import TaskSpec

logger = logging.getLogger(__name__)

_KERNEL_MAX_SUPPORT = 4096  # 충돌 쌍 행렬 크기 제한


@dataclass
class FactoredCount:
    admissible: int
    weighted: int


@lru_cache(maxsize=None)
def surjections(n: int, s: int) -> int:
    """n원소 집합에서 s원소 집합으로 가는 전사 함수의 수"""
    if s > n or s < 0:
        return 0
    if n == 0:
        return 1 if s == 0 else 0
    return sum((-1) ** j * math.comb(s, j) * (s - j) ** n for j in range(s + 1))


def falling_factorial(n: int, r: int) -> int:
    return math.perm(n, r)


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


# 적용 가능성 ---------------------------------------------------------------


def joint_dp_applicable(task: TaskSpec, ms: MitigationSet) -> bool:
    """감독이 없고 모든 보조 헤드가 support 전체에 걸친 joint 패밀리"""
    if not task.alpha_family.is_joint or ms.has_supervision:
        return False
    support = set(task.support.indices)
    return all(set(h.worlds) == support for h in task.auxiliary)


def kernel_applicable(task: TaskSpec, ms: MitigationSet) -> bool:
    """감독과 distillation이 없고 커널 조합 수가 상한 이하인 factorized 패밀리"""
    if task.alpha_family.is_joint or ms.has_supervision or ms.pinned_cells:
        return False
    if len(task.support) > _KERNEL_MAX_SUPPORT:
        return False
    return kernel_space_size(task) <= settings.FACTORED_KERNEL_LIMIT


def kernel_space_size(task: TaskSpec) -> int:
    family = task.alpha_family
    return math.prod(
        bell_number(family.group_cardinality(task.space, gi)) for gi in range(len(family.groups))
    )


def factored_applicable(task: TaskSpec, ms: MitigationSet) -> bool:
    if task.alpha_family.is_joint:
        return joint_dp_applicable(task, ms)
    return kernel_applicable(task, ms)


# joint 패밀리 ---------------------------------------------------------------


def _class_sizes(task: TaskSpec) -> Dict[int, List[int]]:
    """주 라벨 -> 그 라벨을 갖는 라벨 클래스(주 + 보조 라벨 튜플)별 world 수"""
    main = task.knowledge.labels
    heads = [h.knowledge.labels for h in task.auxiliary]
    classes: Counter = Counter()
    for g in task.support.indices:
        classes[(int(main[g]),) + tuple(int(labels[g]) for labels in heads)] += 1
    grouped: Dict[int, List[int]] = defaultdict(list)
    for key in sorted(classes):
        grouped[key[0]].append(classes[key])
    return grouped


def joint_label_dp(task: TaskSpec, ms: Optional[MitigationSet] = None) -> FactoredCount:
    """
    joint 패밀리의 JRS 허용 α 수와 |Y|^(자유 셀) 가중 합

    라벨 클래스 L (n_L개 world)은 서로소인 셀 집합 S_L로 전사되어야 합니다.
    distillation으로 고정된 셀은 β*(c)가 같은 주 라벨의 클래스만 사용할 수 있습니다.
    support 밖 world는 아무 셀로나 갈 수 있으므로 W^(W - |supp|)를 곱합니다.
    """
    ms = ms or MitigationSet.none()
    W = task.space.total_worlds
    Y = task.label_count
    pinned = sorted(set(ms.pinned_cells))
    pool: Counter = Counter(int(task.knowledge.labels[c]) for c in pinned)
    unpinned = W - len(pinned)
    injective = ms.reconstruction

    states: Dict[int, int] = {0: 1}  # 사용한 비고정 셀 수 -> 경우의 수
    for label, sizes in _class_sizes(task).items():
        p = pool.get(label, 0)
        inner: Dict[Tuple[int, int], int] = {(0, B): ways for B, ways in states.items()}
        for n in sizes:
            nxt: Dict[Tuple[int, int], int] = defaultdict(int)
            for (A, B), ways in inner.items():
                for a in range(min(p - A, n) + 1):
                    for b in range(min(unpinned - B, n - a) + 1):
                        s = a + b
                        if s == 0 or (injective and s != n):
                            continue
                        term = math.comb(p - A, a) * math.comb(unpinned - B, b) * surjections(n, s)
                        if term:
                            nxt[(A + a, B + b)] += ways * term
            inner = nxt
        collapsed: Dict[int, int] = defaultdict(int)
        for (_, B), ways in inner.items():
            collapsed[B] += ways
        states = collapsed

    off_support = W ** (W - len(task.support))
    admissible = sum(states.values()) * off_support
    weighted = sum(ways * Y ** (unpinned - B) for B, ways in states.items()) * off_support
    logger.debug(f"[Factored] joint DP - admissible: {admissible}")
    return FactoredCount(admissible=admissible, weighted=weighted)


def joint_rs_closed_form(task: TaskSpec) -> int:
    """
    joint 패밀리, 감독/reconstruction 없음: RS 허용 α 수

    각 support world g는 β*(c) = β*(g) 이고 g가 속한 보조 헤드 라벨이 같은 셀 c로 독립적으로 갈 수 있습니다.
    """
    W = task.space.total_worlds
    main = task.knowledge.labels
    heads = [(h.knowledge.labels, set(h.worlds)) for h in task.auxiliary]
    cache: Dict[tuple, int] = {}
    total = 1
    for g in task.support.indices:
        key = (int(main[g]),) + tuple(int(labels[g]) if g in worlds else -1 for labels, worlds in heads)
        if key not in cache:
            mask = main == main[g]
            for labels, worlds in heads:
                if g in worlds:
                    mask &= labels == labels[g]
            cache[key] = int(np.count_nonzero(mask))
        total *= cache[key]
    return total * W ** (W - len(task.support))


# factorized 패밀리 -----------------------------------------------------------


def restricted_growth_strings(card: int) -> np.ndarray:
    """값 {0..card-1}의 모든 집합 분할 (블록 번호는 첫 등장 순서)"""
    rows: List[List[int]] = [[0]]
    for _ in range(1, card):
        rows = [row + [v] for row in rows for v in range(max(row) + 2)]
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), card)


def _conflict_pairs(task: TaskSpec) -> np.ndarray:
    """같은 셀에 놓일 수 없는 support world 쌍 (support 내 위치 기준)"""
    support = np.asarray(task.support.indices, dtype=np.int64)
    n = len(support)
    main = task.knowledge.labels[support]
    clash = main[:, None] != main[None, :]
    position = {int(g): i for i, g in enumerate(support)}
    for head in task.auxiliary:
        idx = np.asarray([position[g] for g in head.worlds], dtype=np.int64)
        if len(idx) < 2:
            continue
        labels = head.knowledge.labels[support[idx]]
        sub = labels[:, None] != labels[None, :]
        clash[np.ix_(idx, idx)] |= sub
    a, b = np.nonzero(np.triu(clash, k=1))
    return np.stack([a, b]) if n else np.zeros((2, 0), dtype=np.int64)


def factorized_kernel_count(task: TaskSpec, ms: Optional[MitigationSet] = None, chunk: int = 4096) -> FactoredCount:
    """
    factorized 패밀리의 JRS 허용 α 수와 가중 합

    그룹별 값 분할을 표준형(restricted growth string) 테이블로 보고 허용성과 도달 셀 수를 계산한 뒤,
    같은 분할을 갖는 α의 수인 Π (card)_{블록 수} 를 곱합니다.
    마지막 그룹은 numpy로 한꺼번에 평가합니다.
    """
    ms = ms or MitigationSet.none()
    space = task.space
    family = task.alpha_family
    W = space.total_worlds
    Y = task.label_count
    support = np.asarray(task.support.indices, dtype=np.int64)
    worlds = np.stack(np.unravel_index(support, space.cardinalities), axis=1)
    strides = np.asarray(space.strides, dtype=np.int64)
    n_groups = len(family.groups)
    kernels = [restricted_growth_strings(family.group_cardinality(space, gi)) for gi in range(n_groups)]
    blocks = [k.max(axis=1) + 1 for k in kernels]
    cards = [family.group_cardinality(space, gi) for gi in range(n_groups)]
    positions = [[i for i in range(space.k) if family.group_of(i) == gi] for gi in range(n_groups)]
    pairs = _conflict_pairs(task)
    injective = ms.reconstruction
    n_support = len(support)

    tally: Counter = Counter()  # (하강 계승, 도달 수) -> 허용 커널 수
    last = n_groups - 1
    last_kernels = kernels[last]
    for combo in itertools.product(*(range(len(kernels[gi])) for gi in range(last))):
        base = np.zeros(n_support, dtype=np.int64)
        prefix_weight = 1
        for gi, row in enumerate(combo):
            table = kernels[gi][row]
            for i in positions[gi]:
                base += table[worlds[:, i]] * strides[i]
            prefix_weight *= falling_factorial(cards[gi], int(blocks[gi][row]))
        for start in range(0, len(last_kernels), chunk):
            tables = last_kernels[start:start + chunk]
            cells = np.broadcast_to(base, (len(tables), n_support)).copy()
            for i in positions[last]:
                cells += tables[:, worlds[:, i]] * strides[i]
            ok = ~np.any(cells[:, pairs[0]] == cells[:, pairs[1]], axis=1)
            ordered = np.sort(cells, axis=1)
            reach = 1 + np.count_nonzero(np.diff(ordered, axis=1), axis=1)
            if injective:
                ok &= reach == n_support
            for r in np.nonzero(ok)[0]:
                weight = prefix_weight * falling_factorial(cards[last], int(blocks[last][start + r]))
                tally[(weight, int(reach[r]))] += 1

    admissible = sum(weight * n for (weight, _), n in tally.items())
    weighted = sum(weight * n * Y ** (W - reach) for (weight, reach), n in tally.items())
    logger.debug(f"[Factored] 커널 열거 - kernels: {kernel_space_size(task)}, admissible: {admissible}")
    return FactoredCount(admissible=admissible, weighted=weighted)


def factored_count(task: TaskSpec, ms: Optional[MitigationSet] = None) -> FactoredCount:
    ms = ms or MitigationSet.none()
    if task.alpha_family.is_joint:
        return joint_label_dp(task, ms)
    return factorized_kernel_count(task, ms)
