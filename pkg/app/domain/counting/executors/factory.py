"""
실행기 팩토리
워커 수에 따라 적절한 실행기 생성
"""

from typing import Optional

from app.core.config import settings
from app.core.exceptions import UsageError
from app.domain.counting.executors.base import PartitionExecutor
from app.domain.counting.executors.multiprocess import MultiprocessExecutor
from app.domain.counting.executors.serial import SerialExecutor


def create_executor(workers: Optional[int] = None) -> PartitionExecutor:
    """
    워커 수에 따라 실행기 생성

    설정:
    - workers 미지정: settings.COUNT_WORKERS 사용
    - workers <= 1: 직렬 실행기
    - workers > 1: 프로세스 풀 실행기

    Returns:
        PartitionExecutor 인스턴스
    """
    workers = settings.COUNT_WORKERS if workers is None else workers
    if workers < 1:
        raise UsageError("--workers 는 1 이상이어야 합니다", details={"workers": workers})
    if workers == 1:
        return SerialExecutor()
    return MultiprocessExecutor(workers)
