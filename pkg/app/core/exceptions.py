"""
예외 정의
모든 도메인 오류는 RsCountError를 상속하며, CLI 종료 코드를 함께 가집니다.
"""

from typing import Any, Dict, Optional

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_VALIDATION = 3


class RsCountError(Exception):
    """rscount 공통 예외"""

    error_code: str = "RSCOUNT_ERROR"
    exit_code: int = EXIT_VALIDATION

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class UsageError(RsCountError):
    """CLI 사용법 오류"""

    error_code = "USAGE_ERROR"
    exit_code = EXIT_USAGE


class TaskValidationError(RsCountError):
    """태스크/입력 문서 검증 실패"""

    error_code = "TASK_VALIDATION_ERROR"
    exit_code = EXIT_VALIDATION


class InputDomainError(RsCountError):
    """연산의 사전조건 위반 (λ 범위, M 범위 등)"""

    error_code = "INPUT_DOMAIN_ERROR"
    exit_code = EXIT_VALIDATION


class BudgetExceededError(RsCountError):
    """탐색 예산 초과"""

    error_code = "BUDGET_EXCEEDED"
    exit_code = EXIT_BUDGET


class EnumerationCapError(RsCountError):
    """intended witness 열거 상한 초과"""

    error_code = "ENUMERATION_CAP_EXCEEDED"
    exit_code = EXIT_BUDGET


class FormulaTooLargeError(RsCountError):
    """exhaustive 모델 카운팅 대상 변수 수 초과"""

    error_code = "FORMULA_TOO_LARGE"
    exit_code = EXIT_VALIDATION


class AlignmentError(RsCountError):
    """카디널리티 호환 매칭이 존재하지 않음"""

    error_code = "ALIGNMENT_ERROR"
    exit_code = EXIT_VALIDATION


class SelftestMismatchError(RsCountError):
    """selftest 오라클 불일치"""

    error_code = "SELFTEST_MISMATCH"
    exit_code = EXIT_BUDGET
