"""
rscount 진입점
Reasoning Shortcut Counter
"""

import logging
import sys

from app.core.config import settings
from app.presentation.cli import run

# 로깅 설정 (리포트는 표준 출력, 로그는 표준 에러)
logging.basicConfig(
    level=logging.DEBUG if settings.DEBUG else getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def main() -> None:
    """console script `rscount`"""
    logger.debug(f"[CLI] {settings.APP_NAME} {settings.APP_VERSION} 시작")
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
