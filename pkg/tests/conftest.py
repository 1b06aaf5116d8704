"""
Pytest 설정 및 Fixtures
"""
from pathlib import Path

import pytest

from app.domain.task.benchmarks import addition_task, sum_parity_task

ROOT = Path(__file__).resolve().parent.parent


# 테스트용 환경 변수 설정
@pytest.fixture(autouse=True)
def setup_env(monkeypatch):
    """테스트 환경 변수 설정"""
    monkeypatch.setenv("DEBUG", "true")
    monkeypatch.setenv("COUNT_WORKERS", "1")
    # 로컬 .env 의 예산 설정이 테스트에 섞이지 않도록
    monkeypatch.delenv("SEARCH_BUDGET", raising=False)


@pytest.fixture(scope="session")
def tasks_dir() -> Path:
    """저장소에 포함된 태스크 파일 디렉터리"""
    return ROOT / "tasks"


@pytest.fixture
def tied_parity():
    """숫자 {0,1} 두 개, sum-parity, 공유 추출기"""
    return sum_parity_task(1, "tied")


@pytest.fixture
def untied_parity():
    return sum_parity_task(1, "untied")


@pytest.fixture
def joint_parity():
    return sum_parity_task(1, "joint")


@pytest.fixture
def tied_addition():
    return addition_task(1, "tied")
