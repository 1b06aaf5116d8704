"""
개념/값 정렬

1. 개념 단위: Pearson 상관 행렬 R_ij = corr(G_i, C_j) 의 |R| 합을 최대화하는 π
   (카디널리티가 다른 쌍은 매칭 불가)
2. 값 단위: 매칭된 쌍마다 동시 출현 테이블에서 일치 수를 최대화하는 ψ
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from app.core.exceptions import AlignmentError
from app.domain.maps.witness import IntendedWitness
from app.domain.metrics.dump import PredictionDump
from app.domain.metrics.hungarian import solve_assignment, solve_max_assignment

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlignmentResult:
    """
    복원된 (π, ψ)

    objective 는 Σ|R_{i,π(i)}|, matched_rows 는 값 단위 매칭의 개념별 일치 행 수입니다.
    """

    witness: IntendedWitness
    objective: float
    matched_rows: Tuple[int, ...]

    @property
    def perm(self) -> Tuple[int, ...]:
        return self.witness.perm

    @property
    def psi(self) -> Tuple[Tuple[int, ...], ...]:
        return self.witness.psi


def pearson_corr_matrix(dump: PredictionDump, warnings: Optional[List[str]] = None) -> np.ndarray:
    """
    값 인덱스 기반 표본 Pearson 상관 행렬 (k × k)

    분산이 0인 열이 관여하는 항목은 0 으로 두고 경고를 남깁니다.
    """
    truth = dump.truth.astype(np.float64)
    predicted = dump.predicted.astype(np.float64)
    truth_c = truth - truth.mean(axis=0)
    pred_c = predicted - predicted.mean(axis=0)
    cov = truth_c.T @ pred_c
    sd_truth = np.sqrt((truth_c ** 2).sum(axis=0))
    sd_pred = np.sqrt((pred_c ** 2).sum(axis=0))
    denom = np.outer(sd_truth, sd_pred)
    corr = np.divide(cov, denom, out=np.zeros_like(cov), where=denom > 0)
    np.clip(corr, -1.0, 1.0, out=corr)

    for name, sd in (("g", sd_truth), ("c", sd_pred)):
        for i in np.nonzero(sd == 0)[0]:
            message = f"column {name}_{i + 1} has zero variance; its correlations are set to 0"
            logger.warning(f"[Metrics] 분산 0 컬럼 - column: {name}_{i + 1}")
            if warnings is not None:
                warnings.append(message)
    return corr


def contingency(dump: PredictionDump, truth_factor: int, pred_factor: int) -> np.ndarray:
    """(g_i 값, c_j 값) 동시 출현 횟수 테이블"""
    card_truth = dump.space.cardinalities[truth_factor]
    card_pred = dump.space.cardinalities[pred_factor]
    codes = dump.truth[:, truth_factor] * card_pred + dump.predicted[:, pred_factor]
    return np.bincount(codes, minlength=card_truth * card_pred).reshape(card_truth, card_pred)


def hungarian_align(dump: PredictionDump, warnings: Optional[List[str]] = None) -> AlignmentResult:
    """
    Hungarian 방법으로 개념 순열 π와 값 전단사 ψ 복원

    Raises:
        AlignmentError: 카디널리티 호환 완전 매칭이 없는 경우
    """
    space = dump.space
    k = space.k
    cards = np.asarray(space.cardinalities)
    corr = np.abs(pearson_corr_matrix(dump, warnings))
    compatible = cards[:, None] == cards[None, :]
    # |R| <= 1 이므로 호환 불가 셀 하나의 비용이 모든 호환 매칭의 비용보다 큽니다
    blocked = float(k + 1)
    cost = np.where(compatible, -corr, blocked)
    perm, _ = solve_assignment(cost)
    if not np.all(compatible[np.arange(k), perm]):
        raise AlignmentError(
            "no cardinality-compatible concept matching",
            details={"cardinalities": list(space.cardinalities)},
        )

    psi: List[Tuple[int, ...]] = [()] * k
    matched: List[int] = []
    for i in range(k):
        j = int(perm[i])
        values, weight = solve_max_assignment(contingency(dump, i, j))
        psi[j] = tuple(int(b) for b in values)
        matched.append(int(round(weight)))
    witness = IntendedWitness(tuple(int(j) for j in perm), tuple(psi)).validate(space)
    objective = float(corr[np.arange(k), perm].sum())
    logger.info(f"[Metrics] 정렬 완료 - pi: {list(witness.perm)}, objective: {objective:.6f}")
    return AlignmentResult(witness=witness, objective=objective, matched_rows=tuple(matched))


def apply_alignment(dump: PredictionDump, witness: IntendedWitness) -> np.ndarray:
    """ground-truth 개념에 (ψ ∘ P_π) 적용 (N, k)"""
    out = np.empty_like(dump.truth)
    for i, j in enumerate(witness.perm):
        out[:, j] = np.asarray(witness.psi[j], dtype=np.int64)[dump.truth[:, i]]
    return out
