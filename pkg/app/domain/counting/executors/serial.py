"""
직렬 실행기 (단일 프로세스)
"""

from typing import Callable, List, Sequence

from app.domain.counting.executors.base import PartitionExecutor, R, T


class SerialExecutor(PartitionExecutor):
    """현재 프로세스에서 순서대로 실행"""

    workers = 1

    def run(self, fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        return [fn(item) for item in items]
