"""
선형 할당 (Hungarian, 최단 증가 경로 + 포텐셜)

정사각 비용 행렬에 대해 O(n^3). 동률은 가장 작은 열 인덱스를 택합니다.
"""

from typing import Tuple

import numpy as np

from app.core.exceptions import InputDomainError


def solve_assignment(cost: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    최소 비용 완전 매칭

    Args:
        cost: (n, n) 유한 실수 비용 행렬

    Returns:
        (col_of_row (n,), 총 비용)

    Raises:
        InputDomainError: 정사각이 아니거나 유한하지 않은 비용
    """
    cost = np.asarray(cost, dtype=np.float64)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise InputDomainError("assignment cost matrix must be square", details={"shape": list(cost.shape)})
    if not np.all(np.isfinite(cost)):
        raise InputDomainError("assignment costs must be finite")
    n = cost.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64), 0.0

    # 1-based: 열 0은 가상 열, p[j] = 열 j에 매칭된 행 (0 = 없음)
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.int64)
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used[1:]
            reduced = cost[i0 - 1] - u[i0] - v[1:]
            better = free & (reduced < minv[1:])
            minv[1:][better] = reduced[better]
            way[1:][better] = j0
            masked = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(masked)) + 1
            delta = masked[j1 - 1]
            u[p[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1

    col_of_row = np.empty(n, dtype=np.int64)
    col_of_row[p[1:] - 1] = np.arange(n)
    total = float(cost[np.arange(n), col_of_row].sum())
    return col_of_row, total


def solve_max_assignment(weights: np.ndarray) -> Tuple[np.ndarray, float]:
    """가중치 최대화 매칭 (비용 = -가중치)"""
    col_of_row, total = solve_assignment(-np.asarray(weights, dtype=np.float64))
    return col_of_row, -total
