"""
카운팅 엔진 모듈
"""

from app.domain.counting.engine import (
    CountOptions,
    EnumerationResult,
    count_jrs,
    count_rs,
    count_with_mitigations,
    enumerate_optimal_alphas,
    run_search,
)
from app.domain.counting.factored import factored_applicable, factored_count
from app.domain.counting.naive import naive_count_pairs, naive_rs_count
from app.domain.counting.report import (
    CountMethod,
    CountReport,
    JrsMode,
    PartitionResult,
    PartitionTask,
    SearchTarget,
)

__all__ = [
    "CountMethod",
    "CountOptions",
    "CountReport",
    "EnumerationResult",
    "JrsMode",
    "PartitionResult",
    "PartitionTask",
    "SearchTarget",
    "count_jrs",
    "count_rs",
    "count_with_mitigations",
    "enumerate_optimal_alphas",
    "factored_applicable",
    "factored_count",
    "naive_count_pairs",
    "naive_rs_count",
    "run_search",
]
