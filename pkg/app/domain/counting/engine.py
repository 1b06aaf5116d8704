"""
카운팅 엔진

count_rs / count_jrs / count_with_mitigations / enumerate_optimal_alphas 진입점.
계산 방식(naive, pruned, factored)과 분할 실행기를 선택하고 CountReport를 조립합니다.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import partial, reduce
from typing import List, Optional, Tuple, Union

from app.core.config import settings
from app.core.exceptions import EnumerationCapError, UsageError
from app.domain.counting.executors import create_executor
from app.domain.counting.factored import (
    factored_applicable,
    factored_count,
    joint_rs_closed_form,
)
from app.domain.counting.naive import naive_count_pairs, naive_rs_count
from app.domain.counting.plan import build_plan
from app.domain.counting.report import (
    MASK_128,
    CountMethod,
    CountReport,
    JrsMode,
    PartitionResult,
    SearchTarget,
)
from app.domain.counting.search import (
    SearchBudgetExhausted,
    SearchState,
    count_partition,
    make_partitions,
)
from app.domain.maps.alpha import AlphaMap
from app.domain.maps.beta import BetaMap
from app.domain.maps.intended import SubtrahendPolicy, rs_intended_count, select_subtrahend
from app.domain.maps.optimality import forced_beta
from app.domain.mitigations.models import MitigationSet
from app.domain.mitigations.multitask import conjoin_multitask, dropped_multitask_worlds
from app.domain.task.task_spec import TaskSpec

logger = logging.getLogger(__name__)


@dataclass
class CountOptions:
    """카운팅 실행 옵션"""

    method: CountMethod = CountMethod.AUTO
    workers: Optional[int] = None
    budget: Optional[int] = None
    subtrahend: SubtrahendPolicy = SubtrahendPolicy.AUTO
    checked: bool = False
    intended_cap: Optional[int] = None

    def __post_init__(self) -> None:
        self.method = CountMethod(self.method)
        self.subtrahend = SubtrahendPolicy(self.subtrahend)
        if self.checked and self.method not in (CountMethod.AUTO, CountMethod.PRUNED):
            raise UsageError("--checked 는 pruned 방식에서만 사용할 수 있습니다")
        if self.budget is not None and self.budget < 1:
            raise UsageError("--budget 은 1 이상이어야 합니다", details={"budget": self.budget})


@dataclass
class EnumerationResult:
    entries: List[Tuple[AlphaMap, BetaMap]] = field(default_factory=list)
    truncated: bool = False
    exact: bool = True
    warnings: List[str] = field(default_factory=list)


@dataclass
class _Prepared:
    task: TaskSpec
    ms: MitigationSet
    digest: str
    warnings: List[str]


def _prepare(task: TaskSpec, ms: Optional[MitigationSet]) -> _Prepared:
    ms = (ms or MitigationSet.none()).validate(task.space)
    warnings: List[str] = []
    for name, n in dropped_multitask_worlds(task, ms).items():
        warnings.append(f"multitask '{name}': {n} world(s) outside the support ignored")
    conjoined = conjoin_multitask(task, ms)
    digest = task.digest(extra={"mitigations": ms.canonical()})
    return _Prepared(conjoined, ms, digest, warnings)


def _resolve_method(task: TaskSpec, ms: MitigationSet, options: CountOptions) -> CountMethod:
    if options.checked:
        return CountMethod.PRUNED
    if options.method is CountMethod.AUTO:
        return CountMethod.FACTORED if factored_applicable(task, ms) else CountMethod.PRUNED
    if options.method is CountMethod.FACTORED and not factored_applicable(task, ms):
        raise UsageError(
            "factored method is not applicable to this task",
            details={"family": task.alpha_family.describe(), "mitigations": ms.active_names()},
        )
    return options.method


def run_search(
    task: TaskSpec,
    ms: MitigationSet,
    target: SearchTarget,
    workers: Optional[int] = None,
    budget: Optional[int] = None,
    checked: bool = False,
) -> PartitionResult:
    """
    분할 탐색 실행 후 병합 (inert 배수 적용)

    분할은 태스크에만 의존하므로 워커 수와 무관하게 같은 결과를 냅니다.
    """
    budget = settings.SEARCH_BUDGET if budget is None else budget
    plan = build_plan(task, ms, target)
    partitions = make_partitions(plan, settings.PARTITION_MIN_VARIABLES, budget, checked)
    with create_executor(workers) as executor:
        results = executor.run(partial(count_partition, plan), partitions)
    merged = reduce(PartitionResult.merge, results)
    m = plan.inert_multiplier
    total = PartitionResult(
        partition_id=0,
        admissible=merged.admissible * m,
        rs_admissible=merged.rs_admissible * m,
        weighted=merged.weighted * m,
        nodes=merged.nodes,
        exact=merged.exact,
    )
    if checked and total.weighted > MASK_128:
        raise OverflowError(f"128비트 누산 범위 초과: {total.weighted}")
    logger.info(
        f"[CountEngine] 탐색 완료 - target: {target.value}, partitions: {len(partitions)}, "
        f"nodes: {total.nodes}, exact: {total.exact}"
    )
    return total


def _rs_admissible(prepared: _Prepared, options: CountOptions, method: CountMethod) -> Tuple[int, bool, int]:
    """RS 허용 α 수, 정확 여부, 탐색 노드 수"""
    task, ms = prepared.task, prepared.ms
    if method is CountMethod.NAIVE:
        return naive_rs_count(task, ms) + 1, True, 0
    if (
        not options.checked
        and task.alpha_family.is_joint
        and not ms.has_supervision
        and not ms.reconstruction
        and method is not CountMethod.PRUNED
    ):
        return joint_rs_closed_form(task), True, 0
    result = run_search(task, ms, SearchTarget.RS, options.workers, options.budget, options.checked)
    return result.rs_admissible, result.exact, result.nodes


def _rs_fields(report: CountReport, rs_admissible: int) -> None:
    report.rs_admissible_alpha_count = rs_admissible
    if rs_admissible == 0:
        report.rs_count = 0
        report.warnings.append("no RS-admissible alpha found (partial search?)")
    else:
        report.rs_count = rs_admissible - 1


def count_rs(
    task: TaskSpec, ms: Optional[MitigationSet] = None, options: Optional[CountOptions] = None
) -> CountReport:
    """
    결정적 RS 개수: β = β* 에서 최적인 α의 수 - 1

    rs_intended_count 는 그중 증인(π, ψ)을 갖는 α의 수이며 증인 공간이 상한을 넘으면 None입니다.
    """
    options = options or CountOptions()
    started = time.perf_counter()
    prepared = _prepare(task, ms)
    method = _resolve_method(prepared.task, prepared.ms, options)
    if method is CountMethod.FACTORED and not prepared.task.alpha_family.is_joint:
        # 커널 열거는 셀 정체성을 보지 않으므로 RS 판정에는 탐색을 사용
        method = CountMethod.PRUNED
    logger.info(f"[CountEngine] RS 카운팅 시작 - task: {task.name}, method: {method.value}")

    rs_admissible, exact, nodes = _rs_admissible(prepared, options, method)
    report = CountReport(
        task_digest=prepared.digest,
        task_name=task.name,
        family=task.alpha_family.describe(),
        target="rs",
        method=method.value,
        workers=options.workers or settings.COUNT_WORKERS,
        exact=exact,
        mitigations=prepared.ms.active_names(),
        warnings=list(prepared.warnings),
        nodes=nodes,
    )
    _rs_fields(report, rs_admissible)
    try:
        report.rs_intended_count = rs_intended_count(prepared.task, prepared.ms, options.intended_cap)
    except EnumerationCapError as e:
        report.warnings.append(f"rs_intended_count skipped: {e.message}")
        logger.warning(f"[CountEngine] intended 열거 생략 - details: {e.details}")
    report.elapsed_seconds = time.perf_counter() - started
    return report


def count_jrs(
    task: TaskSpec,
    mode: Union[JrsMode, str] = JrsMode.REDUNDANT,
    ms: Optional[MitigationSet] = None,
    options: Optional[CountOptions] = None,
) -> CountReport:
    """
    결정적 JRS 개수

    허용 α (support에서 β* 라벨이 다른 world를 합치지 않는 α) 마다 β는 reach(α)에서 강제되고,
    redundant 모드는 자유 셀마다 |Y|개의 완성을 세며 non-redundant 모드는 1을 셉니다.
    두 합에서 같은 subtrahend를 빼고, 음수가 되면 값을 그대로 두고 경고를 남깁니다.
    """
    mode = JrsMode(mode)
    options = options or CountOptions()
    started = time.perf_counter()
    prepared = _prepare(task, ms)
    conj, ms = prepared.task, prepared.ms
    method = _resolve_method(conj, ms, options)
    logger.info(
        f"[CountEngine] JRS 카운팅 시작 - task: {task.name}, method: {method.value}, mode: {mode.value}"
    )

    nodes = 0
    if method is CountMethod.NAIVE:
        naive = naive_count_pairs(conj, ms)
        admissible, weighted, rs_admissible, exact = (
            naive.admissible_alphas,
            naive.optimal_pairs,
            naive.rs_admissible_alphas,
            True,
        )
    elif method is CountMethod.FACTORED:
        factored = factored_count(conj, ms)
        admissible, weighted = factored.admissible, factored.weighted
        rs_method = CountMethod.FACTORED if conj.alpha_family.is_joint else CountMethod.PRUNED
        rs_admissible, exact, nodes = _rs_admissible(prepared, options, rs_method)
    else:
        result = run_search(conj, ms, SearchTarget.JRS, options.workers, options.budget, options.checked)
        admissible, weighted, rs_admissible = result.admissible, result.weighted, result.rs_admissible
        exact, nodes = result.exact, result.nodes

    subtrahend = select_subtrahend(conj, ms, options.subtrahend, options.intended_cap)
    report = CountReport(
        task_digest=prepared.digest,
        task_name=task.name,
        family=task.alpha_family.describe(),
        target="jrs" if mode is JrsMode.REDUNDANT else "jrs-nonredundant",
        method=method.value,
        workers=options.workers or settings.COUNT_WORKERS,
        exact=exact,
        admissible_alpha_count=admissible,
        optimal_pair_count=weighted,
        jrs_count_redundant=weighted - subtrahend.value,
        jrs_count_nonredundant=admissible - subtrahend.value,
        intended_subtrahend=subtrahend,
        mitigations=ms.active_names(),
        warnings=list(prepared.warnings),
        nodes=nodes,
    )
    _rs_fields(report, rs_admissible)
    for name in ("jrs_count_redundant", "jrs_count_nonredundant"):
        value = getattr(report, name)
        if value < 0:
            message = f"{name} is negative ({value}): subtrahend {subtrahend.formula.value} exceeds the admissible total"
            report.warnings.append(message)
            logger.warning(f"[CountEngine] 음수 카운트 - {message}")
    if not exact:
        report.warnings.append("search budget exhausted: counts are partial lower bounds")
    report.elapsed_seconds = time.perf_counter() - started
    return report


def count_with_mitigations(
    task: TaskSpec,
    ms: MitigationSet,
    mode: str = "jrs",
    options: Optional[CountOptions] = None,
) -> CountReport:
    """
    미티게이션 제약 아래에서 다시 카운팅

    Args:
        mode: "rs" | "jrs" | "jrs-nonredundant"
    """
    if mode == "rs":
        return count_rs(task, ms, options)
    if mode == "jrs":
        return count_jrs(task, JrsMode.REDUNDANT, ms, options)
    if mode == "jrs-nonredundant":
        return count_jrs(task, JrsMode.NONREDUNDANT, ms, options)
    raise UsageError(f"알 수 없는 mode: {mode}", details={"mode": mode})


def enumerate_optimal_alphas(
    task: TaskSpec,
    limit: int,
    ms: Optional[MitigationSet] = None,
    target: SearchTarget = SearchTarget.JRS,
    budget: Optional[int] = None,
) -> EnumerationResult:
    """
    허용 α를 인코딩 사전식 순서로 최대 limit개 생성 (각각 강제된 β와 함께)

    자연 변수 순서와 항등값 우선 도메인을 사용하므로 첫 항목은 항상 항등 α입니다.
    """
    if limit < 1:
        raise UsageError("--limit 은 1 이상이어야 합니다", details={"limit": limit})
    prepared = _prepare(task, ms)
    conj, ms = prepared.task, prepared.ms
    plan = build_plan(conj, ms, SearchTarget(target), collapse_inert=False, natural_order=True)
    pinned = {c: int(conj.knowledge.labels[c]) for c in ms.pinned_cells}
    result = EnumerationResult(warnings=list(prepared.warnings))
    state = SearchState(plan, budget=settings.SEARCH_BUDGET if budget is None else budget)
    try:
        for _ in state.walk(0):
            if len(result.entries) == limit:
                result.truncated = True
                break
            joint, tables = plan.alpha_tables(state.values)
            alpha = AlphaMap(conj.space, conj.alpha_family, joint=joint, tables=tables)
            result.entries.append((alpha, forced_beta(alpha, conj, pinned)))
    except SearchBudgetExhausted:
        result.exact = False
        result.warnings.append("search budget exhausted: enumeration incomplete")
    logger.info(
        f"[CountEngine] 열거 완료 - entries: {len(result.entries)}, truncated: {result.truncated}"
    )
    return result
