"""
분할 실행기 모듈
"""

from app.domain.counting.executors.base import PartitionExecutor
from app.domain.counting.executors.factory import create_executor
from app.domain.counting.executors.multiprocess import MultiprocessExecutor
from app.domain.counting.executors.serial import SerialExecutor

__all__ = [
    "MultiprocessExecutor",
    "PartitionExecutor",
    "SerialExecutor",
    "create_executor",
]
