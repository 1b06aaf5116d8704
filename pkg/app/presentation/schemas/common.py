"""
공통 스키마
"""

from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.exceptions import RsCountError


class ErrorResponse(BaseModel):
    """에러 응답"""

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "error": True,
                "error_code": "TASK_VALIDATION_ERROR",
                "error_message": "task file not found",
                "details": {"path": "missing.json"},
            }
        }
    )

    error: bool = Field(True, description="에러 여부")
    error_code: str = Field(..., description="에러 코드")
    error_message: str = Field(..., description="에러 메시지")
    details: Optional[Dict[str, Any]] = Field(None, description="상세 정보")

    @classmethod
    def from_error(cls, error: RsCountError) -> "ErrorResponse":
        return cls(error_code=error.error_code, error_message=error.message, details=error.details or None)


def decimal(value: Optional[int]) -> Optional[str]:
    """임의 정밀도 정수를 10진 문자열로"""
    return None if value is None else str(value)
