"""
Extremality 검사 서비스
"""

import logging
from typing import Optional, Union

from app.domain.extremality import ExtremalityReport, check_extremality
from app.infrastructure.files import load_layer

logger = logging.getLogger(__name__)


class ExtremalityService:
    def __init__(self, workers: Optional[int] = None):
        self.workers = workers

    def check(
        self,
        layer_path: str,
        grid_points: Optional[int] = None,
        pair_budget: Union[int, str, None] = "all",
        seed: int = 0,
    ) -> ExtremalityReport:
        layer = load_layer(layer_path)
        report = check_extremality(layer, grid_points, pair_budget, seed, self.workers)
        if not report.satisfied:
            logger.warning(
                f"[ExtremalityService] extremality 위반 - worst: {report.worst_violation}, pair: {report.worst_pair}"
            )
        return report
