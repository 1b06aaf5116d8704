"""
multiprocessing.Pool 기반 실행기
"""

import logging
from multiprocessing.pool import Pool
from typing import Callable, List, Optional, Sequence

from app.domain.counting.executors.base import PartitionExecutor, R, T

logger = logging.getLogger(__name__)


class MultiprocessExecutor(PartitionExecutor):
    """프로세스 풀에서 작업을 분산 실행 (결과 순서는 입력 순서)"""

    def __init__(self, workers: int, chunksize: int = 1):
        self.workers = workers
        self.chunksize = chunksize
        self._pool: Optional[Pool] = None

    def _ensure_pool(self) -> Pool:
        if self._pool is None:
            self._pool = Pool(processes=self.workers)
            logger.debug(f"[Executor] 프로세스 풀 시작 - workers: {self.workers}")
        return self._pool

    def run(self, fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        if len(items) <= 1:
            return [fn(item) for item in items]
        pool = self._ensure_pool()
        return list(pool.imap(fn, items, chunksize=self.chunksize))

    def close(self) -> None:
        if self._pool is not None:
            self._pool.close()
            self._pool.join()
            self._pool = None
            logger.debug("[Executor] 프로세스 풀 종료")
