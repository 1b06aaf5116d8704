"""
log(M)-결정성 검사와 최대 확률 하한
"""

import math

import numpy as np

from app.core.exceptions import InputDomainError
from app.domain.extremality.layer import softmax


def _check_m(M: float, label_count: int) -> None:
    if not M > label_count - 1:
        raise InputDomainError(
            "M must exceed label_count - 1", details={"M": M, "labels": label_count}
        )


def is_logM_deterministic(weights: np.ndarray, M: float) -> bool:
    """
    모든 행 c에 대해 어떤 y가 존재하여
    (1) 모든 y' != y: w_c^y - w_c^{y'} >= log M
    (2) 모든 y', y'' != y: |w_c^{y'} - w_c^{y''}| <= log M

    Raises:
        InputDomainError: M <= |Y| - 1
    """
    weights = np.atleast_2d(np.asarray(weights, dtype=np.float64))
    label_count = weights.shape[1]
    _check_m(M, label_count)
    log_m = math.log(M)
    for row in weights:
        found = False
        for y in range(label_count):
            others = np.delete(row, y)
            if others.size == 0:
                found = True
                break
            if np.all(row[y] - others >= log_m) and others.max() - others.min() <= log_m:
                found = True
                break
        if not found:
            return False
    return True


def min_max_prob_bound(M: float, label_count: int) -> float:
    """
    log(M)-결정적 softmax 레이어의 world별 최대 라벨 확률 하한 1 / (1 + (|Y|-1)/M)

    Raises:
        InputDomainError: M <= |Y| - 1
    """
    if label_count == 1:
        return 1.0
    _check_m(M, label_count)
    return 1.0 / (1.0 + (label_count - 1) / M)


def max_prob_per_world(weights: np.ndarray) -> np.ndarray:
    """softmax 레이어의 world별 max_y ω(1{C=c})_y"""
    return softmax(np.atleast_2d(np.asarray(weights, dtype=np.float64))).max(axis=1)


def satisfies_max_prob_bound(weights: np.ndarray, M: float, slack: float = 1e-12) -> bool:
    """모든 world의 최대 확률이 하한 이상인지"""
    bound = min_max_prob_bound(M, np.atleast_2d(weights).shape[1])
    return bool(np.all(max_prob_per_world(weights) >= bound - slack))
