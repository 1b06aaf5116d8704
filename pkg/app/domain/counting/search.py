"""
가지치기 백트래킹 탐색

변수를 하나 할당할 때마다 그 변수로 완성되는 support world를 검사합니다.

- 서로 다른 β* 라벨의 world가 같은 셀로 가면 즉시 거부 (JRS 허용성)
- distillation으로 고정된 셀은 β*(c) 와 라벨이 같아야 함
- 보조 헤드도 같은 방식으로 라벨 충돌 검사
- reconstruction이면 support world끼리 셀을 공유할 수 없음
- RS 대상이면 β*(α(g)) ≠ β*(g) 인 순간 거부, JRS 대상이면 위반 수만 기록
"""

import logging
from typing import Iterator, List, Optional, Tuple

from app.domain.counting.plan import SearchPlan
from app.domain.counting.report import (
    CheckedAccumulator,
    PartitionResult,
    PartitionTask,
    SearchTarget,
)

logger = logging.getLogger(__name__)


class SearchBudgetExhausted(Exception):
    pass


class SearchState:
    """할당/되돌리기가 가능한 탐색 상태"""

    def __init__(self, plan: SearchPlan, budget: Optional[int] = None):
        W = plan.total_worlds
        self.plan = plan
        self.budget = budget
        self.values: List[int] = [-1] * plan.variable_count
        self.cell_count = [0] * W
        self.cell_label = [-1] * W
        self.head_count = [[0] * W for _ in plan.head_labels]
        self.head_label = [[-1] * W for _ in plan.head_labels]
        self.reached = 0
        self.reached_pinned = 0
        self.violations = 0
        self.nodes = 0
        self._trail: List[List[Tuple[int, int, bool]]] = []
        self._prune_violations = plan.target is SearchTarget.RS

    # 할당 ---------------------------------------------------------------

    def assign(self, pos: int, value: int) -> bool:
        """
        order[pos] 변수에 value 할당

        Returns:
            제약을 모두 만족하면 True (상태 반영), 아니면 False (상태 불변)
        """
        plan = self.plan
        var = plan.order[pos]
        values = self.values
        values[var] = value
        applied: List[Tuple[int, int, bool]] = []
        main = plan.main_labels
        for g in plan.completes[pos]:
            if plan.is_joint:
                c = value
            else:
                c = 0
                for v, stride in plan.world_terms[g]:
                    c += values[v] * stride
            label = main[g]
            if plan.pinned[c] and main[c] != label:
                break
            count = self.cell_count[c]
            if count and (plan.reconstruction or self.cell_label[c] != label):
                break
            heads = plan.world_heads.get(g, ())
            conflict = False
            bad = main[c] != label
            for h in heads:
                head_labels = plan.head_labels[h]
                if self.head_count[h][c] and self.head_label[h][c] != head_labels[g]:
                    conflict = True
                    break
                if head_labels[c] != head_labels[g]:
                    bad = True
            if conflict or (bad and self._prune_violations):
                break
            if count == 0:
                self.cell_label[c] = label
                self.reached += 1
                if plan.pinned[c]:
                    self.reached_pinned += 1
            self.cell_count[c] = count + 1
            for h in heads:
                self.head_count[h][c] += 1
                self.head_label[h][c] = plan.head_labels[h][g]
            if bad:
                self.violations += 1
            applied.append((g, c, bad))
        else:
            self._trail.append(applied)
            return True
        self._rollback(applied)
        values[var] = -1
        return False

    def undo(self, pos: int) -> None:
        self._rollback(self._trail.pop())
        self.values[self.plan.order[pos]] = -1

    def _rollback(self, applied: List[Tuple[int, int, bool]]) -> None:
        plan = self.plan
        for g, c, bad in reversed(applied):
            count = self.cell_count[c] - 1
            self.cell_count[c] = count
            if count == 0:
                self.cell_label[c] = -1
                self.reached -= 1
                if plan.pinned[c]:
                    self.reached_pinned -= 1
            for h in plan.world_heads.get(g, ()):
                self.head_count[h][c] -= 1
                if self.head_count[h][c] == 0:
                    self.head_label[h][c] = -1
            if bad:
                self.violations -= 1

    # 순회 ---------------------------------------------------------------

    def free_cells(self) -> int:
        """β가 자유로운 셀 수 (도달하지 않았고 distillation으로 고정되지 않은 셀)"""
        plan = self.plan
        return plan.total_worlds - self.reached - (plan.pinned_count - self.reached_pinned)

    def walk(self, start: int = 0) -> Iterator[None]:
        """
        order[start:] 변수를 깊이 우선으로 할당하며 허용 잎마다 yield

        재귀 대신 명시적 인덱스 스택을 사용합니다.
        """
        order = self.plan.order
        n = len(order)
        if start >= n:
            yield None
            return
        domains = [self.plan.domains[var] for var in order]
        idx = [0] * n
        pos = start
        budget = self.budget
        while pos >= start:
            domain = domains[pos]
            i = idx[pos]
            if i == len(domain):
                idx[pos] = 0
                pos -= 1
                if pos >= start:
                    self.undo(pos)
                    idx[pos] += 1
                continue
            self.nodes += 1
            if budget is not None and self.nodes > budget:
                raise SearchBudgetExhausted()
            if self.assign(pos, domain[i]):
                if pos + 1 == n:
                    yield None
                    self.undo(pos)
                    idx[pos] += 1
                else:
                    pos += 1
            else:
                idx[pos] += 1


def count_partition(plan: SearchPlan, task: PartitionTask) -> PartitionResult:
    """
    분할 하나를 탐색하여 허용 α 수와 가중 합을 계산

    가중치는 |Y|^(자유 셀 수) 이며 inert 변수 배수는 호출자가 곱합니다.
    """
    result = PartitionResult(partition_id=task.partition_id)
    state = SearchState(plan, budget=task.budget)
    start = 0
    for pos, value in task.prefix:
        state.nodes += 1
        if not state.assign(pos, value):
            result.nodes = state.nodes
            return result
        start = pos + 1

    Y = plan.label_count
    powers = {}
    weighted = CheckedAccumulator() if task.checked else None
    admissible = rs_admissible = total = 0
    try:
        for _ in state.walk(start):
            admissible += 1
            if state.violations == 0:
                rs_admissible += 1
            free = state.free_cells()
            weight = powers.get(free)
            if weight is None:
                weight = powers[free] = Y**free
            if weighted is not None:
                weighted.add(weight)
            total += weight
    except SearchBudgetExhausted:
        result.exact = False
        logger.debug(f"[Search] 분할 예산 소진 - partition: {task.partition_id}, nodes: {state.nodes}")

    if weighted is not None and weighted.value != total:
        raise ArithmeticError("128비트 누산 결과가 임의 정밀도 합과 다릅니다")
    result.admissible = admissible
    result.rs_admissible = rs_admissible
    result.weighted = total
    result.nodes = state.nodes
    return result


def make_partitions(plan: SearchPlan, min_variables: int, budget: Optional[int], checked: bool = False):
    """
    첫 탐색 변수의 값으로 분할 (워커 수와 무관)

    변수가 min_variables보다 적으면 분할하지 않습니다. 예산은 분할 수로 균등 분배합니다.
    """
    if len(plan.order) < max(min_variables, 1):
        return [PartitionTask(partition_id=0, prefix=(), budget=budget, checked=checked)]
    first = plan.domains[plan.order[0]]
    share = None if budget is None else max(budget // len(first), 1)
    return [
        PartitionTask(partition_id=i, prefix=((0, value),), budget=share, checked=checked)
        for i, value in enumerate(first)
    ]
