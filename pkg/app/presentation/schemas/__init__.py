"""
입출력 스키마 (DTO)
"""

from app.presentation.schemas.common import ErrorResponse, decimal
from app.presentation.schemas.reports import (
    CountReportSchema,
    EnumerationReportSchema,
    ExportReportSchema,
    ExtremalityReportSchema,
    IntendedReportSchema,
    MetricsReportSchema,
    SelftestCheckSchema,
    SelftestReportSchema,
    SubtrahendSchema,
)

__all__ = [
    "CountReportSchema",
    "EnumerationReportSchema",
    "ErrorResponse",
    "ExportReportSchema",
    "ExtremalityReportSchema",
    "IntendedReportSchema",
    "MetricsReportSchema",
    "SelftestCheckSchema",
    "SelftestReportSchema",
    "SubtrahendSchema",
    "decimal",
]
