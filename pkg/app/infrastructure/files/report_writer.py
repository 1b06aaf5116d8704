"""
리포트 출력

JSON 모드는 스키마 필드 선언 순서 그대로, 텍스트 모드는 정렬된 2열 표로 씁니다.
"""

import sys
from pathlib import Path
from typing import Any, List, Optional, TextIO, Tuple

from pydantic import BaseModel

from app.infrastructure.files.task_loader import PathLike


def write_bytes(path: PathLike, payload: bytes) -> None:
    Path(path).write_bytes(payload)


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return ", ".join(_cell(v) for v in value) if value else "-"
    if isinstance(value, dict):
        return ", ".join(f"{k}={_cell(v)}" for k, v in value.items()) if value else "-"
    return str(value)


def table_rows(model: BaseModel, exclude: Optional[set] = None) -> List[Tuple[str, str]]:
    data = model.model_dump(mode="json", exclude=exclude)
    return [(key, _cell(value)) for key, value in data.items()]


class ReportWriter:
    """
    리포트를 스트림에 출력

    Args:
        as_json: True면 JSON 문서, False면 사람이 읽는 표
        stream: 출력 대상 (기본 표준 출력)
    """

    def __init__(self, as_json: bool = False, stream: Optional[TextIO] = None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def write(self, report: BaseModel, title: Optional[str] = None, exclude: Optional[set] = None) -> None:
        if self.as_json:
            self.stream.write(report.model_dump_json(indent=2, exclude=exclude) + "\n")
            return
        rows = table_rows(report, exclude)
        width = max((len(k) for k, _ in rows), default=0)
        if title:
            self.stream.write(f"{title}\n{'=' * len(title)}\n")
        for key, value in rows:
            self.stream.write(f"{key.ljust(width)}  {value}\n")

    def write_lines(self, lines: List[str]) -> None:
        for line in lines:
            self.stream.write(line + "\n")
