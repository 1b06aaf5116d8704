"""
평가 지표 테스트
"""
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from app.core.exceptions import InputDomainError, TaskValidationError
from app.domain.maps import FREE, BetaMap, IntendedWitness, is_optimal_pair
from app.domain.metrics import (
    AlignmentResult,
    PredictionDump,
    aligned_concept_f1,
    apply_alignment,
    concept_collapse,
    contingency,
    eval_beta_f1,
    evaluate_dump,
    hungarian_align,
    identity_concept_f1,
    macro_f1,
    pearson_corr_matrix,
    solve_assignment,
    solve_max_assignment,
)
from app.domain.task import ConceptSpace
from app.domain.task.benchmarks import biased_sum_parity_task, parity_shortcut


def _grid(cards, repeat=2):
    worlds = np.array(list(itertools.product(*[range(c) for c in cards])) * repeat, dtype=np.int64)
    return worlds


def _dump(cards, truth, predicted, y=None, yhat=None, labels=None):
    n = len(truth)
    y = np.zeros(n, dtype=np.int64) if y is None else y
    yhat = y if yhat is None else yhat
    return PredictionDump(ConceptSpace.from_cardinalities(cards), truth, predicted, y, yhat, labels)


def _flipped():
    truth = _grid((2, 2))
    y = truth.sum(axis=1) % 2
    return _dump((2, 2), truth, 1 - truth, y, y, 2)


def _random_cards(rng):
    """k ∈ 1..5, 카디널리티 2..10, 전체 격자 4096 이하"""
    while True:
        cards = tuple(int(c) for c in rng.integers(2, 11, size=int(rng.integers(1, 6))))
        if math.prod(cards) <= 4096:
            return cards


def _correlated_bijection(rng, card):
    while True:
        psi = tuple(int(v) for v in rng.permutation(card))
        if abs(np.corrcoef(np.arange(card), psi)[0, 1]) >= 0.2:
            return psi


class TestHungarian:
    """선형 할당 테스트"""

    def test_small_matrix(self):
        cost = np.array([[4.0, 1.0, 3.0], [2.0, 0.0, 5.0], [3.0, 2.0, 2.0]])
        cols, total = solve_assignment(cost)
        assert cols.tolist() == [1, 0, 2]
        assert total == 5.0

    def test_max_assignment(self):
        cols, total = solve_max_assignment(np.array([[0, 5], [7, 1]]))
        assert cols.tolist() == [1, 0]
        assert total == 12.0

    def test_empty(self):
        cols, total = solve_assignment(np.zeros((0, 0)))
        assert cols.size == 0 and total == 0.0

    def test_not_square(self):
        with pytest.raises(InputDomainError, match="square"):
            solve_assignment(np.zeros((2, 3)))

    def test_not_finite(self):
        with pytest.raises(InputDomainError, match="finite"):
            solve_assignment(np.array([[np.inf, 0.0], [0.0, 1.0]]))

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(-20, 20), min_size=16, max_size=16))
    def test_matches_brute_force(self, values):
        cost = np.array(values, dtype=np.float64).reshape(4, 4)
        _, total = solve_assignment(cost)
        best = min(sum(cost[i, p[i]] for i in range(4)) for p in itertools.permutations(range(4)))
        assert total == pytest.approx(best)


class TestAlignment:
    """π / ψ 복원 테스트"""

    def test_pearson_identity(self):
        truth = _grid((3, 3))
        corr = pearson_corr_matrix(_dump((3, 3), truth, truth))
        assert corr == pytest.approx(np.eye(2))

    def test_pearson_swapped(self):
        truth = _grid((3, 3))
        corr = pearson_corr_matrix(_dump((3, 3), truth, truth[:, ::-1]))
        assert corr == pytest.approx(np.array([[0.0, 1.0], [1.0, 0.0]]))

    def test_zero_variance(self):
        truth = _grid((2, 2))
        predicted = truth.copy()
        predicted[:, 1] = 0
        warnings = []
        corr = pearson_corr_matrix(_dump((2, 2), truth, predicted), warnings)
        assert corr[:, 1] == pytest.approx([0.0, 0.0])
        assert warnings == ["column c_2 has zero variance; its correlations are set to 0"]

    def test_contingency(self):
        truth = _grid((2, 3), repeat=1)
        table = contingency(_dump((2, 3), truth, truth), 1, 1)
        assert table.tolist() == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]

    def test_planted_recovery(self):
        """c_1 = g_2, c_2 = 3 - g_1 로 심은 변환을 복원"""
        truth = _grid((4, 4))
        predicted = np.column_stack([truth[:, 1], 3 - truth[:, 0]])
        dump = _dump((4, 4), truth, predicted)
        alignment = hungarian_align(dump)
        assert alignment.perm == (1, 0)
        assert alignment.psi == ((0, 1, 2, 3), (3, 2, 1, 0))
        assert alignment.objective == pytest.approx(2.0)
        assert np.array_equal(apply_alignment(dump, alignment.witness), predicted)

    @pytest.mark.parametrize("seed", range(20))
    def test_random_planted_recovery(self, seed):
        """전체 격자에 심은 (π, ψ) 를 복원 (값 상관이 약한 ψ 는 Pearson 으로 식별 불가라 제외)"""
        rng = np.random.default_rng(seed)
        cards = _random_cards(rng)
        k = len(cards)
        perm = [0] * k
        for card in set(cards):
            group = [i for i in range(k) if cards[i] == card]
            for i, j in zip(group, rng.permutation(group)):
                perm[i] = int(j)
        psi = [_correlated_bijection(rng, card) for card in cards]
        witness = IntendedWitness(tuple(perm), tuple(psi)).validate(ConceptSpace.from_cardinalities(cards))
        truth = _grid(cards, repeat=1)
        dump = _dump(cards, truth, truth)
        predicted = apply_alignment(dump, witness)
        dump = _dump(cards, truth, predicted)

        alignment = hungarian_align(dump)
        assert alignment.perm == witness.perm
        assert alignment.psi == witness.psi
        assert aligned_concept_f1(dump, alignment) == 1.0

    def test_value_relabel_invariance(self):
        dump = _flipped()
        alignment = hungarian_align(dump)
        assert alignment.perm == (0, 1)
        assert alignment.psi == ((1, 0), (1, 0))
        assert alignment.matched_rows == (8, 8)

    def test_mixed_cardinalities(self):
        """카디널리티가 다른 factor 끼리는 매칭하지 않음"""
        truth = _grid((2, 3))
        dump = _dump((2, 3), truth, truth)
        assert hungarian_align(dump).perm == (0, 1)


class TestScores:
    """Cls(C), F1 테스트"""

    def test_collapse_half(self):
        truth = _grid((2, 2), repeat=1)
        predicted = np.array([[0, 0], [0, 0], [1, 1], [1, 1]])
        assert concept_collapse(_dump((2, 2), truth, predicted)) == 0.5

    def test_collapse_none(self):
        truth = _grid((2, 2), repeat=1)
        assert concept_collapse(_dump((2, 2), truth, truth)) == 0.0

    def test_collapse_single_world(self):
        truth = _grid((4, 4), repeat=1)
        predicted = np.zeros_like(truth)
        assert concept_collapse(_dump((4, 4), truth, predicted)) == pytest.approx(0.9375)

    def test_constant_prediction(self):
        assert macro_f1(np.array([0, 1, 0, 1]), np.array([0, 0, 0, 0])) == pytest.approx(1 / 3)

    def test_identity_f1_on_flip(self):
        assert identity_concept_f1(_flipped()) == 0.0

    def test_beta_f1(self):
        dump = _flipped()
        space = dump.space
        beta = BetaMap(space, 2, (0, 1, 1, 0))
        assert eval_beta_f1(dump, beta, hungarian_align(dump)) == 1.0

    def test_beta_free_cell(self):
        dump = _flipped()
        beta = BetaMap(dump.space, 2, (0, 1, 1, FREE))
        with pytest.raises(InputDomainError, match="free"):
            eval_beta_f1(dump, beta, hungarian_align(dump))

    def test_subtraction_beta_fails_out_of_support(self):
        """편향 support 에서 최적인 뺄셈형 β 는 (짝수, 홀수) world 에서 틀림"""
        task = biased_sum_parity_task(3, "tied")
        space = task.space
        table = tuple(max(c[0] % 2 - c[1] % 2, 0) for c in space.iter_worlds())
        beta = BetaMap(space, 2, table)
        assert is_optimal_pair(parity_shortcut(task), beta, task)

        truth = _grid((4, 4), repeat=1)
        y = truth.sum(axis=1) % 2
        dump = _dump((4, 4), truth, truth % 2, y, y, 2)
        identity = AlignmentResult(IntendedWitness.identity(space), objective=0.0, matched_rows=(0, 0))
        assert eval_beta_f1(dump, beta, identity) < 1.0

    def test_evaluate_flipped(self):
        report = evaluate_dump(_flipped(), BetaMap(ConceptSpace.from_cardinalities((2, 2)), 2, (0, 1, 1, 0)))
        assert report.rows == 8
        assert report.concept_f1 == 1.0
        assert report.identity_concept_f1 == 0.0
        assert report.label_f1 == 1.0
        assert report.beta_f1 == 1.0
        assert report.concept_collapse == 0.0
        assert report.warnings == []

    def test_evaluate_without_beta(self):
        assert evaluate_dump(_flipped()).beta_f1 is None


class TestPredictionDump:
    """덤프 검증 테스트"""

    def test_empty(self):
        with pytest.raises(TaskValidationError, match="prediction dump is empty"):
            _dump((2, 2), np.zeros((0, 2)), np.zeros((0, 2)), np.zeros(0), np.zeros(0))

    def test_out_of_range_concept(self):
        with pytest.raises(TaskValidationError, match="out-of-range c"):
            _dump((2, 2), [[0, 0]], [[0, 2]])

    def test_out_of_range_label(self):
        with pytest.raises(TaskValidationError, match="out-of-range y"):
            _dump((2, 2), [[0, 0]], [[0, 0]], np.array([2]), np.array([0]), labels=2)

    def test_frame_header(self):
        frame = _flipped().to_frame()
        with pytest.raises(TaskValidationError, match="header mismatch"):
            PredictionDump.from_frame(frame.rename(columns={"yhat": "pred"}), _flipped().space)

    def test_frame_keeps_rows(self):
        dump = _flipped()
        again = PredictionDump.from_frame(dump.to_frame(), dump.space, 2)
        assert np.array_equal(again.predicted, dump.predicted)
        assert again.rows == dump.rows
