"""
카운팅 서비스
태스크 파일을 읽어 RS/JRS 카운트와 허용 α 열거를 수행합니다.
"""

import logging
from typing import Optional, Tuple

from app.domain.counting import (
    CountOptions,
    CountReport,
    EnumerationResult,
    SearchTarget,
    count_with_mitigations,
    enumerate_optimal_alphas,
)
from app.infrastructure.files import LoadedTask, load_task

logger = logging.getLogger(__name__)


class CountService:
    """count / enumerate 명령 서비스"""

    def __init__(self, options: Optional[CountOptions] = None):
        """
        Args:
            options: 계산 방식, 워커 수, 예산, subtrahend 정책
        """
        self.options = options or CountOptions()

    def count(self, task_path: str, mode: str = "jrs", use_mitigations: bool = False) -> CountReport:
        """
        Args:
            mode: "rs" | "jrs" | "jrs-nonredundant"
            use_mitigations: 태스크 문서의 mitigations 블록 적용 여부
        """
        loaded = load_task(task_path)
        ms = loaded.select_mitigations(use_mitigations)
        report = count_with_mitigations(loaded.task, ms, mode, self.options)
        logger.info(
            f"[CountService] 카운트 완료 - task: {report.task_name}, target: {report.target}, "
            f"count: {report.headline}, exact: {report.exact}"
        )
        return report

    def enumerate(
        self,
        task_path: str,
        limit: int,
        target: SearchTarget = SearchTarget.JRS,
        use_mitigations: bool = False,
    ) -> Tuple[EnumerationResult, str]:
        """허용 α 열거 결과와 태스크 digest"""
        loaded = load_task(task_path)
        ms = loaded.select_mitigations(use_mitigations)
        result = enumerate_optimal_alphas(loaded.task, limit, ms, target, self.options.budget)
        return result, task_digest(loaded, use_mitigations)


def task_digest(loaded: LoadedTask, use_mitigations: bool) -> str:
    ms = loaded.select_mitigations(use_mitigations)
    return loaded.task.digest(extra={"mitigations": ms.canonical()})
