"""
환경 설정 모듈
탐색 예산, 워커 수, 수치 검사 파라미터 등의 설정을 관리합니다.
"""

from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """애플리케이션 환경 설정"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",  # 알 수 없는 환경 변수는 무시
    )

    # 앱 기본 설정
    APP_NAME: str = "Reasoning Shortcut Counter"
    APP_VERSION: str = "0.1.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # 카운팅 엔진 설정
    COUNT_WORKERS: int = 1  # --workers 기본값
    SEARCH_BUDGET: Optional[int] = None  # 탐색 노드 예산 (None: 무제한)
    PARTITION_MIN_VARIABLES: int = 4  # 이보다 변수가 적으면 분할 없이 직렬 탐색
    NAIVE_PAIR_BUDGET: int = 10**7  # naive 오라클의 |V(A)| x |V(B)| 상한
    INTENDED_ENUM_CAP: int = 200_000  # intended witness 열거 상한
    PERMUTATION_MAX_FACTORS: int = 8  # check_intended 순열 탐색 허용 factor 수
    FACTORED_KERNEL_LIMIT: int = 2_000_000  # factored 방식의 그룹 커널 조합 상한

    # 태스크 표현 설정
    SUPPORT_BITSET_MAX: int = 2**24  # 이하이면 support를 bitset으로 저장

    # CNF 설정
    EXHAUSTIVE_MAX_VARS: int = 24  # exhaustive_model_count 변수 상한
    EXHAUSTIVE_CHUNK_BITS: int = 16  # 한 번에 평가하는 할당 수 (2^bits)

    # Extremality 검사 설정
    EXTREMALITY_GRID_POINTS: int = 99
    EXTREMALITY_REFINE_ITERATIONS: int = 20  # golden-section 반복 횟수
    EXTREMALITY_TOLERANCE: float = 1e-9
    EXTREMALITY_CHUNK_PAIRS: int = 2048  # 벡터화 청크당 pair 수


@lru_cache()
def get_settings() -> Settings:
    """싱글톤 설정 객체 반환"""
    return Settings()


settings = get_settings()
