"""
예측 덤프 CSV 리더 (pandas)
"""

import logging
from pathlib import Path
from typing import Optional

import pandas as pd

from app.core.exceptions import TaskValidationError
from app.domain.metrics import PredictionDump
from app.domain.task import ConceptSpace
from app.infrastructure.files.task_loader import PathLike

logger = logging.getLogger(__name__)


def read_dump(path: PathLike, space: ConceptSpace, label_count: Optional[int] = None) -> PredictionDump:
    """
    헤더 g_1..g_k, c_1..c_k, y, yhat 의 정수 CSV 읽기

    Raises:
        TaskValidationError: 파일 없음, 파싱 실패, 헤더/값 오류, 빈 덤프
    """
    path = Path(path)
    if not path.is_file():
        raise TaskValidationError("dump file not found", details={"path": str(path)})
    try:
        frame = pd.read_csv(path, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise TaskValidationError("prediction dump is empty", details={"path": str(path)})
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise TaskValidationError("prediction dump is not valid CSV", details={"path": str(path), "error": str(e)})
    frame.columns = [str(c).strip() for c in frame.columns]
    dump = PredictionDump.from_frame(frame, space, label_count)
    logger.info(f"[DumpReader] 덤프 로드 - path: {path}, rows: {dump.rows}")
    return dump
