"""
분할 실행기 인터페이스 정의
"""

from abc import ABC, abstractmethod
from typing import Callable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


class PartitionExecutor(ABC):
    """분할 작업 실행기 인터페이스"""

    workers: int = 1

    @abstractmethod
    def run(self, fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """
        각 작업에 fn을 적용

        Args:
            fn: 모듈 최상위 함수 (프로세스 간 pickle 가능해야 함)
            items: 작업 목록

        Returns:
            작업 순서와 같은 순서의 결과 목록
        """
        pass

    def close(self) -> None:
        """자원 정리"""
        pass

    def __enter__(self) -> "PartitionExecutor":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
