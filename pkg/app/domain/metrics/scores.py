"""
덤프 기반 점수: Cls(C), 정렬된 개념 F1, F1(β), F1(Y)
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from sklearn.metrics import f1_score

from app.core.exceptions import InputDomainError
from app.domain.maps.beta import FREE, BetaMap
from app.domain.maps.witness import IntendedWitness
from app.domain.metrics.alignment import AlignmentResult, apply_alignment, hungarian_align
from app.domain.metrics.dump import PredictionDump

logger = logging.getLogger(__name__)


def macro_f1(truth: np.ndarray, predicted: np.ndarray) -> float:
    """정답/예측에 등장한 클래스에 대한 macro F1 (등장하지 않는 쪽은 0)"""
    return float(f1_score(truth, predicted, average="macro", zero_division=0))


def concept_collapse(dump: PredictionDump) -> float:
    """Cls(C) = 1 - (예측된 서로 다른 world 수) / (전체 world 수)"""
    distinct = len(np.unique(dump.predicted_cells()))
    return 1.0 - distinct / dump.space.total_worlds


def aligned_concept_f1(dump: PredictionDump, alignment: AlignmentResult) -> float:
    """변환된 ground truth와 예측 사이 개념별 macro F1의 평균"""
    return _concept_f1(dump, alignment.witness)


def identity_concept_f1(dump: PredictionDump) -> float:
    return _concept_f1(dump, IntendedWitness.identity(dump.space))


def _concept_f1(dump: PredictionDump, witness: IntendedWitness) -> float:
    transformed = apply_alignment(dump, witness)
    scores = [macro_f1(transformed[:, j], dump.predicted[:, j]) for j in range(dump.space.k)]
    return float(np.mean(scores))


def label_f1(dump: PredictionDump) -> float:
    return macro_f1(dump.y, dump.yhat)


def eval_beta_f1(dump: PredictionDump, beta: BetaMap, alignment: AlignmentResult) -> float:
    """
    F1(β): 행마다 ŷ_β = β((ψ ∘ P_π)(g)) 를 y 와 비교

    Raises:
        InputDomainError: 변환된 world 중 β가 free인 셀이 있는 경우
    """
    space = dump.space
    if beta.space.cardinalities != space.cardinalities:
        raise InputDomainError("β is defined over a different concept space")
    cells = np.ravel_multi_index(tuple(apply_alignment(dump, alignment.witness).T), space.cardinalities)
    table = np.asarray(beta.table, dtype=np.int64)
    labels = table[cells]
    missing = np.unique(cells[labels == FREE])
    if len(missing):
        worlds = [list(space.world_at(int(c))) for c in missing]
        raise InputDomainError(
            f"β is free on {len(worlds)} required world(s): {worlds[:10]}",
            details={"worlds": worlds},
        )
    return macro_f1(dump.y, labels)


@dataclass
class MetricsReport:
    rows: int
    label_f1: float
    concept_f1: float
    identity_concept_f1: float
    concept_collapse: float
    alignment: AlignmentResult
    beta_f1: Optional[float] = None
    warnings: List[str] = field(default_factory=list)


def evaluate_dump(dump: PredictionDump, beta: Optional[BetaMap] = None) -> MetricsReport:
    """덤프 하나에 대한 전체 평가 (β가 주어지면 F1(β) 포함)"""
    warnings: List[str] = []
    alignment = hungarian_align(dump, warnings)
    report = MetricsReport(
        rows=dump.rows,
        label_f1=label_f1(dump),
        concept_f1=aligned_concept_f1(dump, alignment),
        identity_concept_f1=identity_concept_f1(dump),
        concept_collapse=concept_collapse(dump),
        alignment=alignment,
        beta_f1=eval_beta_f1(dump, beta, alignment) if beta is not None else None,
        warnings=warnings,
    )
    logger.info(
        f"[Metrics] 평가 완료 - rows: {report.rows}, F1(C): {report.concept_f1:.4f}, "
        f"Cls(C): {report.concept_collapse:.4f}"
    )
    return report
