"""
Extremality 검사 테스트
"""
import math

import numpy as np
import pytest

from app.core.exceptions import InputDomainError, TaskValidationError, UsageError
from app.domain.extremality import (
    InferenceLayerSpec,
    LayerKind,
    check_extremality,
    eligible_pairs,
    is_logM_deterministic,
    max_prob_per_world,
    min_max_prob_bound,
    mixture_label_dist,
    satisfies_max_prob_bound,
    softmax,
)
from app.domain.extremality import scan as scan_module
from app.domain.task import ConceptSpace


def _layer(kind, rows, cards=None):
    rows = np.asarray(rows, dtype=np.float64)
    space = ConceptSpace.from_cardinalities(cards or (rows.shape[0],))
    return InferenceLayerSpec(LayerKind(kind), space, rows.shape[1], rows)


VIOLATING = [[2.0, 0.0, 1.9], [0.0, 2.0, 1.9]]


def _one_hot_layer(rng):
    """world 마다 라벨 하나에 확률 1 (최소 두 라벨 사용)"""
    worlds = int(rng.integers(2, 7))
    labels = int(rng.integers(2, 5))
    chosen = rng.integers(0, labels, size=worlds)
    chosen[:2] = (0, 1)
    return _layer("linear_prob", np.eye(labels)[chosen])


def _log_m_layer(rng, M, labels):
    """지배 라벨만 log M 이상 높고 나머지 로짓은 같은 softmax 레이어 (행별 상수 이동 포함)"""
    worlds = int(rng.integers(2, 6))
    chosen = rng.integers(0, labels, size=worlds)
    chosen[:2] = (0, 1)
    margins = math.log(M) + rng.uniform(0.01, 3.0, size=worlds)
    shifts = rng.normal(0.0, 2.0, size=(worlds, 1))
    rows = np.zeros((worlds, labels)) + shifts
    rows[np.arange(worlds), chosen] += margins
    return _layer("softmax_linear", rows)


class TestDeterminism:
    """log(M)-결정성과 확률 하한 테스트"""

    def test_binary_gap(self):
        assert is_logM_deterministic(np.array([[math.log(200), 0.0]]), 100)

    def test_uniform_rest(self):
        assert is_logM_deterministic(np.array([[math.log(200), 0.0, 0.0]]), 100)

    def test_spread_rest(self):
        """지배 라벨이 아닌 로짓들의 차이가 log M 을 넘으면 false"""
        assert not is_logM_deterministic(np.array([[math.log(200), 0.0, -2 * math.log(200)]]), 100)

    def test_small_gap(self):
        assert not is_logM_deterministic(np.array([[1.0, 0.0]]), 100)

    def test_invalid_m(self):
        with pytest.raises(InputDomainError):
            is_logM_deterministic(np.array([[5.0, 0.0, 0.0]]), 1.5)

    def test_bound_values(self):
        assert min_max_prob_bound(100, 19) == pytest.approx(0.8475, abs=1e-4)
        assert min_max_prob_bound(10, 2) == pytest.approx(10 / 11)
        assert min_max_prob_bound(0.5, 1) == 1.0

    def test_bound_invalid_m(self):
        with pytest.raises(InputDomainError):
            min_max_prob_bound(18, 19)

    def test_max_prob(self):
        rows = np.array([[0.0, 0.0], [math.log(3), 0.0]])
        assert max_prob_per_world(rows) == pytest.approx([0.5, 0.75])

    def test_softmax_stable(self):
        probs = softmax(np.array([[1000.0, 0.0]]))
        assert np.all(np.isfinite(probs))
        assert probs[0, 0] == pytest.approx(1.0)


class TestLayer:
    """레이어 구성 테스트"""

    def test_shape_mismatch(self):
        with pytest.raises(TaskValidationError, match="shape"):
            InferenceLayerSpec(LayerKind.LINEAR_PROB, ConceptSpace.from_cardinalities((2,)), 2, np.eye(3))

    def test_linear_prob_rows_are_distributions(self):
        with pytest.raises(TaskValidationError, match="label distributions"):
            _layer("linear_prob", [[0.6, 0.6], [0.0, 1.0]])

    def test_mixture_linear(self):
        layer = _layer("linear_prob", [[1.0, 0.0], [0.0, 1.0]])
        assert mixture_label_dist(layer, (0,), (1,), 0.25) == pytest.approx([0.25, 0.75])

    def test_mixture_softmax(self):
        layer = _layer("softmax_linear", VIOLATING)
        expected = math.exp(1.9) / (2 * math.e + math.exp(1.9))
        assert mixture_label_dist(layer, (0,), (1,), 0.5)[2] == pytest.approx(expected)
        assert expected == pytest.approx(0.5515, abs=1e-4)

    @pytest.mark.parametrize("lam", [0.0, 1.0, -0.2, 1.5])
    def test_mixture_lambda_domain(self, lam):
        layer = _layer("linear_prob", [[1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(InputDomainError, match="lambda"):
            mixture_label_dist(layer, (0,), (1,), lam)

    def test_mixture_same_world(self):
        layer = _layer("linear_prob", [[1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(InputDomainError, match="differ"):
            mixture_label_dist(layer, (0,), (0,), 0.5)

    def test_eligible_pairs_skip_ties(self):
        """argmax 동률 world 는 제외, 같은 라벨 쌍도 제외"""
        layer = _layer("linear_prob", [[1.0, 0.0], [0.5, 0.5], [0.0, 1.0], [0.9, 0.1]])
        pairs, tied, ineligible = eligible_pairs(layer)
        assert pairs.tolist() == [[0, 2], [2, 3]]
        assert tied.tolist() == [1]
        assert ineligible == 3


class TestCheckExtremality:
    """격자 스캔 테스트"""

    def test_violating_layer(self):
        report = check_extremality(_layer("softmax_linear", VIOLATING))
        endpoint = math.exp(2.0) / (math.exp(2.0) + 1.0 + math.exp(1.9))
        mixture = math.exp(1.9) / (2 * math.e + math.exp(1.9))
        assert not report.satisfied
        assert report.worst_violation > 0
        assert report.worst_violation == pytest.approx(mixture - endpoint, abs=1e-6)
        assert report.worst_pair[2] == pytest.approx(0.5, abs=1e-3)
        assert report.eligible_pairs == 1

    def test_extremal_layer(self):
        report = check_extremality(_layer("softmax_linear", [[10.0, 0.0], [0.0, 10.0]]))
        assert report.satisfied
        assert report.worst_violation < 0
        assert report.satisfied_fraction == 1.0

    def test_linear_prob_one_hot(self):
        """결정적 확률 논리 레이어는 항상 extremality 를 만족"""
        rng = np.random.default_rng(7)
        for _ in range(200):
            report = check_extremality(_one_hot_layer(rng), grid_points=9)
            assert report.satisfied
            assert report.worst_violation < 0

    @pytest.mark.parametrize("M", [10, 100, 1000])
    @pytest.mark.parametrize("labels", [2, 19])
    def test_log_m_deterministic_layers(self, M, labels):
        rng = np.random.default_rng(M + labels)
        for _ in range(17):
            layer = _log_m_layer(rng, M, labels)
            assert is_logM_deterministic(layer.rows, M)
            assert satisfies_max_prob_bound(layer.rows, M)
            report = check_extremality(layer, grid_points=19)
            assert report.satisfied

    def test_refining_keeps_violation(self):
        layer = _layer("softmax_linear", VIOLATING)
        coarse = check_extremality(layer, grid_points=3)
        fine = check_extremality(layer, grid_points=199)
        assert not coarse.satisfied and not fine.satisfied
        assert fine.worst_violation >= coarse.worst_violation - 1e-9

    def test_refinement_reuses_interior_point(self, monkeypatch):
        """정밀화는 반복마다 새 λ 하나만 평가 (격자 1회 + 초기 내부점 2회 + 반복 횟수)"""
        calls = []
        original = scan_module._max_prob

        def counting(*args):
            calls.append(args[-1])
            return original(*args)

        monkeypatch.setattr(scan_module, "_max_prob", counting)
        result = scan_module.scan_pairs(
            _layer("softmax_linear", VIOLATING), np.array([[0, 1]]), 4, 20, 1e-9
        )
        assert len(calls) == 1 + 2 + 20
        endpoint = math.exp(2.0) / (math.exp(2.0) + 1.0 + math.exp(1.9))
        mixture = math.exp(1.9) / (2 * math.e + math.exp(1.9))
        assert result.worst_violation == pytest.approx(mixture - endpoint, abs=1e-6)
        assert result.worst_pair[2] == pytest.approx(0.5, abs=1e-3)

    def test_world_order_symmetric(self):
        forward = check_extremality(_layer("softmax_linear", VIOLATING))
        backward = check_extremality(_layer("softmax_linear", VIOLATING[::-1]))
        assert forward.worst_violation == pytest.approx(backward.worst_violation, abs=1e-9)

    def test_vacuous(self):
        """모든 world 의 argmax 가 같으면 공허하게 만족"""
        report = check_extremality(_layer("linear_prob", [[1.0, 0.0], [0.8, 0.2]]))
        assert report.satisfied and report.vacuous
        assert report.worst_violation is None
        assert report.warnings

    def test_pair_sampling(self):
        rows = np.eye(3)[[0, 1, 2, 0, 1, 2]]
        layer = _layer("linear_prob", rows)
        first = check_extremality(layer, pair_budget=4, seed=3)
        second = check_extremality(layer, pair_budget=4, seed=3)
        assert first.pairs_scanned == 4
        assert first.eligible_pairs == 12
        assert first.worst_pair == second.worst_pair
        assert first.worst_violation == second.worst_violation

    def test_workers_agree(self):
        layer = _layer("softmax_linear", VIOLATING)
        assert check_extremality(layer, workers=2).worst_violation == pytest.approx(
            check_extremality(layer, workers=1).worst_violation
        )

    @pytest.mark.parametrize("grid", [0, 2])
    def test_grid_too_small(self, grid):
        with pytest.raises(UsageError):
            check_extremality(_layer("softmax_linear", VIOLATING), grid_points=grid)

    def test_pairs_budget_zero(self):
        with pytest.raises(UsageError):
            check_extremality(_layer("softmax_linear", VIOLATING), pair_budget=0)
