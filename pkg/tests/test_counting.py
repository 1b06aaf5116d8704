"""
카운팅 엔진 테스트 (naive 오라클, 분할 탐색, factored, 열거)
"""
import itertools
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from app.application.services.selftest_service import CORPUS_SIZE, random_corpus, single_world_task
from app.core.config import settings
from app.core.exceptions import BudgetExceededError, UsageError
from app.domain.cnf import encode_task, exhaustive_model_count, projected_model_count
from app.domain.counting import (
    CountMethod,
    CountOptions,
    PartitionResult,
    count_jrs,
    count_rs,
    enumerate_optimal_alphas,
    factored_applicable,
    naive_count_pairs,
    naive_rs_count,
)
from app.domain.counting.factored import bell_number, surjections
from app.domain.counting.naive import iter_family
from app.domain.maps import BetaMap, SubtrahendFormula, SubtrahendPolicy, forced_beta, is_optimal_pair
from app.domain.mitigations import MitigationSet
from app.domain.task import AlphaFamily, ConceptSpace, KnowledgeTable, SupportSet, TaskSpec
from app.domain.task.benchmarks import addition_task, biased_sum_parity_task, sum_parity_task
from app.infrastructure.files import load_task

PRUNED = CountOptions(method=CountMethod.PRUNED)
COROLLARY = CountOptions(subtrahend=SubtrahendPolicy.COROLLARY)
SUM_PARITY_DIR = Path(__file__).resolve().parent.parent / "tasks" / "sum_parity"


@lru_cache(maxsize=None)
def _sum_parity(n: int, family: str) -> TaskSpec:
    return load_task(SUM_PARITY_DIR / f"sum_parity_N{n}_{family}.json").task


@lru_cache(maxsize=None)
def _corollary_report(n: int, family: str):
    return count_jrs(_sum_parity(n, family), options=COROLLARY)


@st.composite
def small_tasks(draw, excluded=None):
    """2×2 공간, |Y| ∈ {2,3}, tied/untied, 랜덤 지식과 부분 support"""
    space = ConceptSpace.from_cardinalities((2, 2))
    labels = draw(st.integers(2, 3))
    table = draw(st.lists(st.integers(0, labels - 1), min_size=4, max_size=4))
    if excluded is None:
        excluded = draw(st.lists(st.integers(0, 3), unique=True, max_size=3))
    family = AlphaFamily.tied(space) if draw(st.booleans()) else AlphaFamily.untied(space)
    return TaskSpec(
        space=space,
        label_count=labels,
        knowledge=KnowledgeTable(space, labels, table),
        support=SupportSet.exclude(space, [space.world_at(i) for i in excluded]),
        alpha_family=family,
    )


class TestCountRs:
    """RS 개수 테스트"""

    def test_tied_sum_parity(self, tied_parity):
        """id 와 swap 이 허용 → 1"""
        report = count_rs(tied_parity, options=PRUNED)
        assert report.rs_count == 1
        assert report.rs_admissible_alpha_count == 2
        assert report.exact

    def test_swap_is_counted_but_intended(self, tied_parity):
        """swap 은 RS 로 세지만 증인도 가짐"""
        assert count_rs(tied_parity, options=PRUNED).rs_intended_count == 2

    def test_tied_addition(self, tied_addition):
        """합 지식에는 RS 가 없음"""
        assert count_rs(tied_addition, options=PRUNED).rs_count == 0

    def test_single_world(self):
        """support 가 한 world 이고 |Y|=1 → 4개 맵 모두 허용, 3"""
        task = single_world_task()
        assert count_rs(task).rs_count == 3
        assert naive_rs_count(task) == 3

    def test_naive_matches(self, tied_parity, untied_parity, tied_addition):
        for task in (tied_parity, untied_parity, tied_addition):
            assert naive_rs_count(task) == count_rs(task, options=PRUNED).rs_count

    def test_joint_closed_form_matches_search(self, joint_parity):
        assert count_rs(joint_parity).rs_count == count_rs(joint_parity, options=PRUNED).rs_count


class TestCountJrs:
    """JRS 개수 테스트"""

    @pytest.mark.parametrize("mode", ["redundant", "nonredundant"])
    def test_untied_is_zero(self, untied_parity, mode):
        """최적 α 4개 - 표현 가능한 intended 4개 = 0"""
        report = count_jrs(untied_parity, mode)
        assert report.jrs_count_redundant == 0
        assert report.jrs_count_nonredundant == 0
        assert report.intended_subtrahend.value == 4
        assert report.intended_subtrahend.formula is SubtrahendFormula.FAMILY_AWARE

    def test_joint_binary(self, joint_parity):
        """joint 패밀리, 숫자 {0,1}: 최적 쌍 168, 허용 α 84, C[G] = 8"""
        report = count_jrs(joint_parity)
        assert report.optimal_pair_count == 168
        assert report.admissible_alpha_count == 84
        assert report.jrs_count_redundant == 160
        assert report.jrs_count_nonredundant == 76
        assert report.intended_subtrahend.formula is SubtrahendFormula.CLOSED_FORM

    def test_closed_form_can_go_negative(self, tied_parity):
        """제한된 패밀리에서 C[G] 를 빼면 음수가 되어 경고"""
        report = count_jrs(tied_parity, options=CountOptions(subtrahend=SubtrahendPolicy.CLOSED_FORM))
        assert report.jrs_count_redundant == 2 - 8
        assert any("negative" in w for w in report.warnings)

    def test_redundant_at_least_nonredundant(self):
        """redundant ≥ non-redundant, 둘 다 RS 개수 이상"""
        report = count_jrs(sum_parity_task(3, "joint"))
        assert report.jrs_count_redundant >= report.jrs_count_nonredundant >= report.rs_count

    def test_modes_share_counts(self, untied_parity):
        first = count_jrs(untied_parity, "redundant")
        second = count_jrs(untied_parity, "nonredundant")
        assert first.target == "jrs" and second.target == "jrs-nonredundant"
        assert first.optimal_pair_count == second.optimal_pair_count

    def test_unknown_mode(self, tied_parity):
        with pytest.raises(ValueError):
            count_jrs(tied_parity, "partial")


CORPUS = random_corpus()
CORPUS_IDS = [task.name for task in CORPUS]


@lru_cache(maxsize=None)
def _naive(index: int):
    return naive_count_pairs(CORPUS[index])


class TestNaiveOracle:
    """naive 이중 순회 오라클 테스트"""

    def test_hand_values(self, tied_parity, untied_parity):
        assert naive_count_pairs(tied_parity).optimal_pairs == 2
        assert naive_count_pairs(untied_parity).optimal_pairs == 4
        assert naive_count_pairs(single_world_task()).optimal_pairs == 4

    def test_budget(self):
        """|V(A)| × |V(B)| 가 예산을 넘으면 오류"""
        with pytest.raises(BudgetExceededError, match="naive oracle"):
            naive_count_pairs(sum_parity_task(3, "joint"))

    def test_corpus_shape(self):
        """패밀리 3종 × support 2종, 카디널리티 3 과 |Y| = 3 포함"""
        assert len(CORPUS) == CORPUS_SIZE
        kinds = {task.name.split("-", 2)[2] for task in CORPUS}
        assert kinds == {f"{f}-{s}" for f in ("joint", "untied", "tied") for s in ("full", "half")}
        assert any(3 in task.space.cardinalities for task in CORPUS)
        assert any(task.label_count == 3 for task in CORPUS)
        assert any(not task.support.is_full for task in CORPUS)

    @pytest.mark.parametrize("index", range(len(CORPUS)), ids=CORPUS_IDS)
    def test_pruned_matches_naive(self, index):
        """시드 코퍼스에서 분할 탐색 = naive"""
        naive = _naive(index)
        report = count_jrs(CORPUS[index], options=PRUNED)
        assert report.optimal_pair_count == naive.optimal_pairs
        assert report.admissible_alpha_count == naive.admissible_alphas
        assert report.rs_admissible_alpha_count == naive.rs_admissible_alphas

    @pytest.mark.parametrize("index", range(len(CORPUS)), ids=CORPUS_IDS)
    def test_factored_matches_naive(self, index):
        task = CORPUS[index]
        if not factored_applicable(task, MitigationSet.none()):
            pytest.skip("factored 방식 적용 불가")
        report = count_jrs(task, options=CountOptions(method=CountMethod.FACTORED))
        assert report.optimal_pair_count == _naive(index).optimal_pairs
        assert report.admissible_alpha_count == _naive(index).admissible_alphas

    @pytest.mark.slow
    @pytest.mark.parametrize("index", range(len(CORPUS)), ids=CORPUS_IDS)
    def test_cnf_matches_naive(self, index):
        """CNF 모델 수 × β 배수 = naive 최적 쌍 수"""
        formula = encode_task(CORPUS[index])
        if formula.num_vars <= settings.EXHAUSTIVE_MAX_VARS:
            models = exhaustive_model_count(formula)
        else:
            models = projected_model_count(formula)
        assert models * formula.beta_multiplier == _naive(index).optimal_pairs


class TestMethodsAgree:
    """계산 방식 간 일치 테스트"""

    @pytest.mark.parametrize(
        "task",
        [
            sum_parity_task(2, "tied"),
            sum_parity_task(2, "untied"),
            sum_parity_task(3, "tied"),
            addition_task(2, "untied"),
            biased_sum_parity_task(2, "untied"),
        ],
        ids=lambda t: t.name,
    )
    def test_factored_vs_pruned(self, task):
        factored = count_jrs(task, options=CountOptions(method=CountMethod.FACTORED))
        pruned = count_jrs(task, options=PRUNED)
        assert factored.optimal_pair_count == pruned.optimal_pair_count
        assert factored.admissible_alpha_count == pruned.admissible_alpha_count
        assert factored.rs_count == pruned.rs_count

    def test_checked_accumulation(self):
        """128비트 검사 모드는 결과를 바꾸지 않음"""
        task = sum_parity_task(2, "untied")
        plain = count_jrs(task, options=PRUNED)
        checked = count_jrs(task, options=CountOptions(checked=True))
        assert checked.optimal_pair_count == plain.optimal_pair_count

    def test_checked_rejects_factored(self):
        with pytest.raises(UsageError):
            CountOptions(method=CountMethod.FACTORED, checked=True)

    @pytest.mark.parametrize("workers", [1, 2, 8])
    @pytest.mark.parametrize("family", ["tied", "untied"])
    @pytest.mark.parametrize(
        "n", [3, pytest.param(4, marks=pytest.mark.slow), pytest.param(5, marks=pytest.mark.slow)]
    )
    def test_worker_invariance(self, n, family, workers):
        """워커 수와 무관하게 같은 개수 (sum-parity N=3..5)"""
        task = _sum_parity(n, family)
        baseline = _corollary_report(n, family)
        options = CountOptions(
            method=CountMethod.PRUNED, workers=workers, subtrahend=SubtrahendPolicy.COROLLARY
        )
        report = count_jrs(task, options=options)
        assert report.optimal_pair_count == baseline.optimal_pair_count
        assert report.admissible_alpha_count == baseline.admissible_alpha_count
        assert report.rs_count == baseline.rs_count
        assert report.jrs_count_redundant == baseline.jrs_count_redundant

    def test_budget_marks_partial(self):
        """예산 소진 시 exact=False 하한"""
        report = count_jrs(sum_parity_task(3, "untied"), options=CountOptions(method=CountMethod.PRUNED, budget=1))
        assert not report.exact
        assert any("budget" in w for w in report.warnings)


class TestEnumeration:
    """허용 α 열거 테스트"""

    def test_tied_parity(self, tied_parity):
        """id 와 swap 두 개, 항등이 먼저"""
        result = enumerate_optimal_alphas(tied_parity, 10)
        assert len(result.entries) == 2
        assert not result.truncated
        first, _ = result.entries[0]
        assert first.canonical() == {"tables": [[0, 1]]}
        assert result.entries[1][0].canonical() == {"tables": [[1, 0]]}

    def test_tied_addition(self, tied_addition):
        result = enumerate_optimal_alphas(tied_addition, 10, target="rs")
        assert len(result.entries) == 1

    def test_limit_truncates(self, tied_parity):
        result = enumerate_optimal_alphas(tied_parity, 1)
        assert len(result.entries) == 1 and result.truncated
        alpha, beta = result.entries[0]
        assert alpha.canonical() == {"tables": [[0, 1]]}
        assert list(beta.table) == [0, 1, 1, 0]

    def test_limit_must_be_positive(self, tied_parity):
        with pytest.raises(UsageError):
            enumerate_optimal_alphas(tied_parity, 0)


class TestCombinatorics:
    """factored 방식 보조 함수 테스트"""

    @pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (3, 5), (5, 52)])
    def test_bell(self, n, expected):
        assert bell_number(n) == expected

    def test_surjections(self):
        assert surjections(3, 2) == 6
        assert surjections(2, 3) == 0

    @given(
        st.lists(
            st.tuples(st.integers(0, 50), st.integers(0, 50), st.integers(0, 10**30)), min_size=1, max_size=6
        )
    )
    def test_merge_order_free(self, parts):
        """분할 결과 병합은 순서와 무관"""
        results = [PartitionResult(i, a, r, w) for i, (a, r, w) in enumerate(parts)]
        forward = results[0]
        for item in results[1:]:
            forward = forward.merge(item)
        backward = results[-1]
        for item in reversed(results[:-1]):
            backward = backward.merge(item)
        assert (forward.admissible, forward.rs_admissible, forward.weighted) == (
            backward.admissible,
            backward.rs_admissible,
            backward.weighted,
        )


class TestBenchmarks:
    """벤치마크 계열의 정성적 성질"""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_addition_has_no_shortcuts(self, n):
        """덧셈 태스크는 RS 도 JRS 도 없음"""
        task = addition_task(n, "tied")
        family_aware = CountOptions(method=CountMethod.PRUNED, subtrahend=SubtrahendPolicy.FAMILY_AWARE)
        assert count_rs(task, options=PRUNED).rs_count == 0
        report = count_jrs(task, "nonredundant", options=family_aware)
        assert report.jrs_count_nonredundant == 0
        assert report.jrs_count_redundant == 0

    def test_sum_parity_grows_with_n(self):
        reports = [count_jrs(sum_parity_task(n, "tied")) for n in (1, 2, 3, 4)]
        for smaller, larger in zip(reports, reports[1:]):
            assert smaller.rs_count <= larger.rs_count
            assert smaller.admissible_alpha_count <= larger.admissible_alpha_count
            assert smaller.optimal_pair_count <= larger.optimal_pair_count

    @pytest.mark.slow
    def test_checked_mode_on_larger_task(self):
        task = sum_parity_task(5, "tied")
        assert count_jrs(task, options=CountOptions(checked=True)).optimal_pair_count == count_jrs(
            task
        ).optimal_pair_count


class TestJrsDominatesRs:
    """같은 subtrahend (항등만 제외) 아래에서 JRS ≥ RS"""

    @pytest.mark.parametrize("family", ["tied", "untied"])
    @pytest.mark.parametrize("n", [1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_sum_parity_files(self, n, family):
        report = _corollary_report(n, family)
        assert report.intended_subtrahend.formula is SubtrahendFormula.COROLLARY
        assert report.jrs_count_redundant == report.optimal_pair_count - 1
        assert report.rs_count == report.rs_admissible_alpha_count - 1
        assert report.jrs_count_redundant >= report.rs_count
        if report.optimal_pair_count > report.rs_admissible_alpha_count:
            assert report.jrs_count_redundant > report.rs_count

    @pytest.mark.parametrize("family", ["tied", "untied"])
    def test_strict_at_n2(self, family):
        """숫자 0..2 에서는 자유 셀 때문에 JRS 가 RS 보다 큼"""
        report = _corollary_report(2, family)
        assert report.jrs_count_redundant > report.rs_count

    def test_family_aware_subtracts_swap(self, tied_parity):
        """family-aware 는 intended swap 도 빼므로 RS 개수보다 작아질 수 있음"""
        family_aware = CountOptions(method=CountMethod.PRUNED, subtrahend=SubtrahendPolicy.FAMILY_AWARE)
        assert count_jrs(tied_parity, options=family_aware).jrs_count_redundant == 0
        assert count_rs(tied_parity, options=PRUNED).rs_count == 1


class TestGrowth:
    """N 증가에 따른 원시 개수의 단조성"""

    @pytest.mark.parametrize("n", [1, 2, 3, pytest.param(4, marks=pytest.mark.slow)])
    def test_untied_non_decreasing(self, n):
        smaller, larger = _corollary_report(n, "untied"), _corollary_report(n + 1, "untied")
        assert smaller.admissible_alpha_count <= larger.admissible_alpha_count
        assert smaller.optimal_pair_count <= larger.optimal_pair_count
        assert smaller.rs_admissible_alpha_count <= larger.rs_admissible_alpha_count
        assert smaller.rs_count <= larger.rs_count


class TestSmallTaskProperties:
    """2×2 랜덤 태스크 속성 테스트"""

    @hypothesis_settings(max_examples=25, deadline=None)
    @given(small_tasks())
    def test_optimal_betas_fill_free_cells(self, task):
        """α 와 짝지어지는 최적 β 의 수 = |Y|^(free 셀 수), 충돌하면 0"""
        space, labels = task.space, task.label_count
        tables = itertools.product(range(labels), repeat=space.total_worlds)
        betas = [BetaMap(space, labels, t) for t in tables]
        for alpha in iter_family(task):
            optimal = sum(1 for beta in betas if is_optimal_pair(alpha, beta, task))
            forced = forced_beta(alpha, task)
            if forced is None:
                assert optimal == 0
            else:
                assert optimal == labels**forced.free_count

    @hypothesis_settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_smaller_support_never_fewer_shortcuts(self, data):
        """support 를 줄이면 허용 α 와 RS 개수가 줄지 않음"""
        excluded = data.draw(st.lists(st.integers(0, 3), unique=True, min_size=1, max_size=3))
        keep = data.draw(st.integers(0, len(excluded) - 1))
        narrow = data.draw(small_tasks(excluded=excluded))
        wide = TaskSpec(
            space=narrow.space,
            label_count=narrow.label_count,
            knowledge=narrow.knowledge,
            support=SupportSet.exclude(narrow.space, [narrow.space.world_at(i) for i in excluded[:keep]]),
            alpha_family=narrow.alpha_family,
        )
        narrow_report = count_jrs(narrow, options=PRUNED)
        wide_report = count_jrs(wide, options=PRUNED)
        assert narrow_report.admissible_alpha_count >= wide_report.admissible_alpha_count
        assert narrow_report.optimal_pair_count >= wide_report.optimal_pair_count
        assert narrow_report.rs_count >= wide_report.rs_count
