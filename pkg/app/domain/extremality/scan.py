"""
Extremality 검사

argmax 라벨이 서로 다른 world 쌍 (c, c2) 마다
max_y ω(λ1{c} + (1-λ)1{c2})_y - max(max_y ω(1{c})_y, max_y ω(1{c2})_y)
의 최댓값(위반량)을 λ 격자 + golden-section 정밀화로 구합니다.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import partial, reduce
from typing import List, Optional, Tuple, Union

import numpy as np

from app.core.config import settings
from app.core.exceptions import UsageError
from app.domain.counting.executors import create_executor
from app.domain.extremality.layer import InferenceLayerSpec, mix
from app.domain.task.space import World

logger = logging.getLogger(__name__)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class PairScan:
    """쌍 청크의 스캔 결과 (병합 가능)"""

    worst_violation: float = -math.inf
    worst_pair: Optional[Tuple[int, int, float]] = None
    scanned: int = 0
    satisfied: int = 0
    boundary: List[Tuple[int, int]] = field(default_factory=list)

    def merge(self, other: "PairScan") -> "PairScan":
        if other.worst_violation > self.worst_violation:
            worst, pair = other.worst_violation, other.worst_pair
        else:
            worst, pair = self.worst_violation, self.worst_pair
        return PairScan(
            worst_violation=worst,
            worst_pair=pair,
            scanned=self.scanned + other.scanned,
            satisfied=self.satisfied + other.satisfied,
            boundary=self.boundary + other.boundary,
        )


@dataclass
class ExtremalityReport:
    satisfied: bool
    vacuous: bool
    worst_violation: Optional[float]
    worst_pair: Optional[Tuple[World, World, float]]
    pairs_scanned: int
    eligible_pairs: int
    ineligible_pairs: int
    grid_points: int
    refine_iterations: int
    satisfied_fraction: float
    tolerance: float
    boundary_pairs: List[Tuple[World, World]] = field(default_factory=list)
    tied_worlds: List[World] = field(default_factory=list)
    seed: Optional[int] = None
    warnings: List[str] = field(default_factory=list)


def strict_argmax(distributions: np.ndarray) -> np.ndarray:
    """행별 유일한 argmax (최댓값이 둘 이상이면 -1)"""
    top = distributions.max(axis=1, keepdims=True)
    ties = np.count_nonzero(distributions == top, axis=1)
    arg = distributions.argmax(axis=1)
    return np.where(ties == 1, arg, -1)


def eligible_pairs(layer: InferenceLayerSpec) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    argmax가 유일하고 서로 다른 world 쌍 (c < c2)

    Returns:
        (pairs (P, 2), tie가 있는 world 인덱스, 부적격 쌍 수)
    """
    labels = strict_argmax(layer.endpoint_distributions())
    first, second = np.triu_indices(len(labels), k=1)
    both = (labels[first] >= 0) & (labels[second] >= 0)
    differ = labels[first] != labels[second]
    tied_pairs = int(np.count_nonzero(~both))
    keep = both & differ
    pairs = np.stack([first[keep], second[keep]], axis=1)
    return pairs, np.nonzero(labels < 0)[0], tied_pairs


def _max_prob(layer: InferenceLayerSpec, first: np.ndarray, second: np.ndarray, lam: np.ndarray) -> np.ndarray:
    return mix(layer, first, second, lam).max(axis=-1)


def scan_pairs(
    layer: InferenceLayerSpec,
    pairs: np.ndarray,
    grid_points: int,
    refine_iterations: int,
    tolerance: float,
) -> PairScan:
    """쌍 청크 하나를 벡터화하여 스캔"""
    result = PairScan()
    if len(pairs) == 0:
        return result
    first, second = pairs[:, 0], pairs[:, 1]
    endpoint = layer.endpoint_distributions().max(axis=1)
    baseline = np.maximum(endpoint[first], endpoint[second])

    grid = np.arange(1, grid_points + 1, dtype=np.float64) / (grid_points + 1)
    lam = np.broadcast_to(grid, (len(pairs), grid_points))
    values = _max_prob(layer, first, second, lam)
    best_idx = values.argmax(axis=1)
    best_val = values[np.arange(len(pairs)), best_idx]
    best_lam = grid[best_idx]

    # 격자 최댓값 주변 구간에서 golden-section 정밀화
    lo = np.where(best_idx > 0, grid[np.maximum(best_idx - 1, 0)], 0.0)
    hi = np.where(best_idx < grid_points - 1, grid[np.minimum(best_idx + 1, grid_points - 1)], 1.0)
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1 = _max_prob(layer, first, second, x1)
    f2 = _max_prob(layer, first, second, x2)
    for _ in range(refine_iterations):
        left = f1 >= f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
        new_x1 = hi - _GOLDEN * (hi - lo)
        new_x2 = lo + _GOLDEN * (hi - lo)
        # 남는 내부점의 값은 재사용하고 새 점 하나만 평가
        fresh_x = np.where(left, new_x1, new_x2)
        fresh = _max_prob(layer, first, second, fresh_x)
        x1, x2 = np.where(left, fresh_x, x2), np.where(left, x1, fresh_x)
        f1, f2 = np.where(left, fresh, f2), np.where(left, f1, fresh)
    for candidate, value in ((x1, f1), (x2, f2)):
        inside = (candidate > 0.0) & (candidate < 1.0) & (value > best_val)
        best_val = np.where(inside, value, best_val)
        best_lam = np.where(inside, candidate, best_lam)

    violation = best_val - baseline
    worst = int(np.argmax(violation))
    result.worst_violation = float(violation[worst])
    result.worst_pair = (int(first[worst]), int(second[worst]), float(best_lam[worst]))
    result.scanned = len(pairs)
    result.satisfied = int(np.count_nonzero(violation <= tolerance))
    boundary = np.nonzero(np.abs(violation) <= tolerance)[0]
    result.boundary = [(int(first[i]), int(second[i])) for i in boundary]
    return result


def _scan_chunk(
    layer: InferenceLayerSpec, grid_points: int, refine_iterations: int, tolerance: float, pairs: np.ndarray
) -> PairScan:
    return scan_pairs(layer, pairs, grid_points, refine_iterations, tolerance)


def check_extremality(
    layer: InferenceLayerSpec,
    grid_points: Optional[int] = None,
    pair_budget: Union[int, str, None] = "all",
    seed: int = 0,
    workers: Optional[int] = None,
    refine_iterations: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> ExtremalityReport:
    """
    추론 레이어의 extremality 검사

    Args:
        grid_points: 내부 λ 격자 점 수 (>= 3)
        pair_budget: "all" 또는 시드 샘플링할 쌍 수
        seed: 샘플링 시드

    Raises:
        UsageError: grid_points < 3 또는 pair_budget < 1
    """
    grid_points = settings.EXTREMALITY_GRID_POINTS if grid_points is None else grid_points
    refine_iterations = settings.EXTREMALITY_REFINE_ITERATIONS if refine_iterations is None else refine_iterations
    tolerance = settings.EXTREMALITY_TOLERANCE if tolerance is None else tolerance
    if grid_points < 3:
        raise UsageError("--grid 는 3 이상이어야 합니다", details={"grid": grid_points})

    pairs, tied, ineligible = eligible_pairs(layer)
    space = layer.space
    warnings: List[str] = []
    if len(tied):
        warnings.append(f"{len(tied)} world(s) have tied argmax labels; their pairs are ineligible")
        logger.warning(f"[Extremality] argmax 동률 world - count: {len(tied)}")
    eligible = len(pairs)

    if pair_budget not in (None, "all"):
        budget = int(pair_budget)
        if budget < 1:
            raise UsageError("--pairs 는 1 이상이어야 합니다", details={"pairs": budget})
        if budget < eligible:
            rng = np.random.default_rng(seed)
            chosen = np.sort(rng.choice(eligible, size=budget, replace=False))
            pairs = pairs[chosen]

    base = dict(
        eligible_pairs=eligible,
        ineligible_pairs=ineligible,
        grid_points=grid_points,
        refine_iterations=refine_iterations,
        tolerance=tolerance,
        tied_worlds=[space.world_at(int(c)) for c in tied],
        seed=seed,
        warnings=warnings,
    )
    if space.total_worlds < 2 or len(pairs) == 0:
        warnings.append("no eligible pair: extremality vacuously satisfied")
        return ExtremalityReport(
            satisfied=True,
            vacuous=True,
            worst_violation=None,
            worst_pair=None,
            pairs_scanned=0,
            satisfied_fraction=1.0,
            **base,
        )

    size = settings.EXTREMALITY_CHUNK_PAIRS
    chunks = [pairs[i:i + size] for i in range(0, len(pairs), size)]
    with create_executor(workers) as executor:
        scans = executor.run(partial(_scan_chunk, layer, grid_points, refine_iterations, tolerance), chunks)
    merged = reduce(PairScan.merge, scans)
    c, c2, lam = merged.worst_pair
    report = ExtremalityReport(
        satisfied=merged.worst_violation <= tolerance,
        vacuous=False,
        worst_violation=merged.worst_violation,
        worst_pair=(space.world_at(c), space.world_at(c2), lam),
        pairs_scanned=merged.scanned,
        satisfied_fraction=merged.satisfied / merged.scanned,
        boundary_pairs=[(space.world_at(a), space.world_at(b)) for a, b in merged.boundary],
        **base,
    )
    logger.info(
        f"[Extremality] 검사 완료 - pairs: {report.pairs_scanned}, worst: {report.worst_violation:.3e}, "
        f"satisfied: {report.satisfied}"
    )
    return report
