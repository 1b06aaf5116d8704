"""
Selftest 서비스

내장 소형 태스크 코퍼스에서 각 계산 경로를 naive 오라클과 손으로 구한 값에 대조합니다.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np

from app.core.config import settings
from app.domain.cnf import encode_task, exhaustive_model_count, projected_model_count
from app.domain.counting import (
    CountMethod,
    CountOptions,
    count_jrs,
    count_rs,
    factored_applicable,
    naive_count_pairs,
)
from app.domain.counting.naive import family_size
from app.domain.maps import SubtrahendPolicy, intended_pair_count
from app.domain.mitigations import MitigationSet
from app.domain.task import (
    AlphaFamily,
    ConceptSpace,
    KnowledgeTable,
    SupportSet,
    TaskSpec,
    build_task,
)
from app.domain.task.benchmarks import addition_task, sum_parity_task

logger = logging.getLogger(__name__)

CORPUS_SEED = 20240917
CORPUS_SIZE = 50
# naive 오라클의 |V(A)| × |V(B)| 상한 (코퍼스 실행 시간)
CORPUS_PAIR_CAP = 50_000

# 패밀리별 후보 공간 (k <= 2, 카디널리티 2..3). |Y| = 2 에서 모두 CORPUS_PAIR_CAP 이하
CORPUS_SPACES: Dict[str, Tuple[Tuple[int, ...], ...]] = {
    "joint": ((2,), (3,), (2, 2)),
    "untied": ((2,), (3,), (2, 2), (2, 3), (3, 2)),
    "tied": ((2,), (3,), (2, 2), (3, 3)),
}
CORPUS_FAMILIES = ("joint", "untied", "tied")


@dataclass
class SelftestCheck:
    name: str
    passed: bool
    expected: str
    actual: str
    task_digest: str


@dataclass
class SelftestOutcome:
    checks: List[SelftestCheck] = field(default_factory=list)

    @property
    def failed(self) -> List[SelftestCheck]:
        return [c for c in self.checks if not c.passed]


def single_world_task() -> TaskSpec:
    """k=1, 카디널리티 2, |Y|=1, support = {(0,)}"""
    return build_task(
        {
            "name": "single-world",
            "concepts": [{"name": "g", "cardinality": 2}],
            "labels": 1,
            "knowledge": {"table": [[0, 0], [1, 0]]},
            "support": {"include": [[0]]},
            "alpha_family": {"kind": "joint"},
        }
    )


def random_corpus(seed: int = CORPUS_SEED, size: int = CORPUS_SIZE) -> List[TaskSpec]:
    """
    시드 고정 랜덤 지식 테이블의 소형 태스크 코퍼스

    i 번째 태스크의 패밀리는 joint, untied, tied 를 순환하고, 패밀리마다 전체 support 와
    무작위 절반 support 를 번갈아 씁니다. 공간은 패밀리 후보에서, |Y| 는 {2, 3} 에서 뽑고
    쌍 공간이 CORPUS_PAIR_CAP 을 넘으면 |Y| = 2 로 줄입니다.
    """
    rng = np.random.default_rng(seed)
    tasks = []
    for i in range(size):
        kind = CORPUS_FAMILIES[i % len(CORPUS_FAMILIES)]
        half = (i // len(CORPUS_FAMILIES)) % 2 == 1
        candidates = CORPUS_SPACES[kind]
        space = ConceptSpace.from_cardinalities(candidates[int(rng.integers(0, len(candidates)))])
        if kind == "joint":
            family = AlphaFamily.joint()
        elif kind == "untied":
            family = AlphaFamily.untied(space)
        else:
            family = AlphaFamily.tied(space)
        labels = int(rng.integers(2, 4))
        if half:
            W = space.total_worlds
            keep = np.sort(rng.choice(W, size=max(1, W // 2), replace=False))
            support = SupportSet.include(space, [space.world_at(int(g)) for g in keep])
        else:
            support = SupportSet.full(space)
        table = rng.integers(0, labels, size=space.total_worlds)
        task = TaskSpec(
            space=space,
            label_count=labels,
            knowledge=KnowledgeTable(space, labels, table),
            support=support,
            alpha_family=family,
            name=f"random-{i}-{kind}-{'half' if half else 'full'}",
        )
        if family_size(task) * labels**space.total_worlds > CORPUS_PAIR_CAP:
            task = TaskSpec(
                space=space,
                label_count=2,
                knowledge=KnowledgeTable(space, 2, table % 2),
                support=support,
                alpha_family=family,
                name=task.name,
            )
        tasks.append(task)
    return tasks


class SelftestService:
    """내장 오라클 코퍼스 실행"""

    def __init__(self, workers: int = 1, corpus_size: int = CORPUS_SIZE):
        self.workers = workers
        self.corpus_size = corpus_size
        self.outcome = SelftestOutcome()

    def _record(self, name: str, task: TaskSpec, expected: object, actual: object) -> None:
        passed = expected == actual
        self.outcome.checks.append(SelftestCheck(name, passed, str(expected), str(actual), task.digest()))
        if not passed:
            logger.error(f"[Selftest] 불일치 - check: {name}, expected: {expected}, actual: {actual}")

    def _safe(self, name: str, task: TaskSpec, expected: object, compute: Callable[[], object]) -> None:
        try:
            actual = compute()
        except Exception as e:
            actual = f"{type(e).__name__}: {e}"
        self._record(name, task, expected, actual)

    def _hand_values(self) -> None:
        tiny = sum_parity_task(1, "tied")
        pruned = CountOptions(method=CountMethod.PRUNED, workers=self.workers)
        self._safe("sum-parity tied rs_count", tiny, 1, lambda: count_rs(tiny, options=pruned).rs_count)
        self._safe("sum-parity tied naive pairs", tiny, 2, lambda: naive_count_pairs(tiny).optimal_pairs)

        addition = addition_task(1, "tied")
        self._safe("addition tied rs_count", addition, 0, lambda: count_rs(addition, options=pruned).rs_count)

        untied = sum_parity_task(1, "untied")
        family_aware = CountOptions(workers=self.workers, subtrahend=SubtrahendPolicy.FAMILY_AWARE)
        for mode in ("redundant", "nonredundant"):
            field_name = f"jrs_count_{mode}"
            self._safe(
                f"sum-parity untied {field_name}",
                untied,
                0,
                lambda m=mode, f=field_name: getattr(count_jrs(untied, m, options=family_aware), f),
            )
        self._safe("sum-parity untied naive pairs", untied, 4, lambda: naive_count_pairs(untied).optimal_pairs)

        single = single_world_task()
        self._safe("single-world rs_count", single, 3, lambda: count_rs(single, options=pruned).rs_count)
        self._safe("single-world naive pairs", single, 4, lambda: naive_count_pairs(single).optimal_pairs)
        self._safe("closed-form C[G] (2,2)", tiny, 8, lambda: intended_pair_count(tiny))

    def _oracle(self, task: TaskSpec) -> None:
        naive = naive_count_pairs(task)
        pruned = CountOptions(method=CountMethod.PRUNED, workers=self.workers)
        report = count_jrs(task, "redundant", options=pruned)
        self._record(f"{task.name} pruned optimal pairs", task, naive.optimal_pairs, report.optimal_pair_count)
        self._record(
            f"{task.name} pruned admissible alphas", task, naive.admissible_alphas, report.admissible_alpha_count
        )
        self._record(
            f"{task.name} rs-admissible alphas", task, naive.rs_admissible_alphas, report.rs_admissible_alpha_count
        )
        if factored_applicable(task, MitigationSet.none()):
            factored = count_jrs(task, "redundant", options=CountOptions(method=CountMethod.FACTORED))
            self._record(
                f"{task.name} factored optimal pairs", task, naive.optimal_pairs, factored.optimal_pair_count
            )
        formula = encode_task(task)
        if formula.num_vars <= settings.EXHAUSTIVE_MAX_VARS:
            models = exhaustive_model_count(formula)
        else:
            models = projected_model_count(formula)
        self._record(f"{task.name} cnf model count", task, naive.optimal_pairs, models * formula.beta_multiplier)

    def run(self) -> SelftestOutcome:
        self.outcome = SelftestOutcome()
        self._hand_values()
        corpus: List[Tuple[str, TaskSpec]] = [(t.name, t) for t in random_corpus(size=self.corpus_size)]
        corpus += [("sum-parity-N1-joint", sum_parity_task(1, "joint"))]
        for name, task in corpus:
            try:
                self._oracle(task)
            except Exception as e:
                self._record(f"{name} oracle", task, "no error", f"{type(e).__name__}: {e}")
        failed = len(self.outcome.failed)
        logger.info(f"[Selftest] 완료 - checks: {len(self.outcome.checks)}, failed: {failed}")
        return self.outcome
