"""
태스크 파일 로더

JSON 태스크 문서를 읽어 TaskSpec과 (선택) MitigationSet을 만듭니다.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Union

from app.core.exceptions import TaskValidationError
from app.domain.mitigations import MitigationSet, build_mitigations
from app.domain.task import TaskSpec, build_task, parse_document
from app.domain.task.document import TaskDocument

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def read_json(path: PathLike, what: str = "task") -> Any:
    """
    JSON 파일 읽기

    Raises:
        TaskValidationError: 파일이 없거나 JSON이 아닌 경우
    """
    path = Path(path)
    if not path.is_file():
        raise TaskValidationError(f"{what} file not found", details={"path": str(path)})
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise TaskValidationError(
            f"{what} file is not valid JSON",
            details={"path": str(path), "line": e.lineno, "column": e.colno},
        )


@dataclass(frozen=True)
class LoadedTask:
    """문서와 그로부터 만든 태스크/미티게이션"""

    path: str
    document: TaskDocument
    task: TaskSpec
    mitigations: MitigationSet

    def select_mitigations(self, enabled: bool) -> MitigationSet:
        return self.mitigations if enabled else MitigationSet.none()


def load_task(path: PathLike) -> LoadedTask:
    raw = read_json(path, "task")
    document = parse_document(raw)
    task = build_task(document)
    mitigations = build_mitigations(document.mitigations, task)
    logger.info(
        f"[TaskLoader] 태스크 로드 - path: {path}, name: {task.name}, "
        f"worlds: {task.total_worlds}, mitigations: {mitigations.active_names()}"
    )
    return LoadedTask(str(path), document, task, mitigations)
