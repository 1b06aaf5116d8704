"""
애플리케이션 서비스
"""

from app.application.services.count_service import CountService, task_digest
from app.application.services.export_service import ExportService, ExportSummary
from app.application.services.extremality_service import ExtremalityService
from app.application.services.intended_service import IntendedService, IntendedSummary
from app.application.services.metrics_service import MetricsService
from app.application.services.selftest_service import (
    SelftestCheck,
    SelftestOutcome,
    SelftestService,
)

__all__ = [
    "CountService",
    "ExportService",
    "ExportSummary",
    "ExtremalityService",
    "IntendedService",
    "IntendedSummary",
    "MetricsService",
    "SelftestCheck",
    "SelftestOutcome",
    "SelftestService",
    "task_digest",
]
