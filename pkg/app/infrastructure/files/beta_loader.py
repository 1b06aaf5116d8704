"""
β 파일 로더

형식:
    {"entries": [[c_1, ..., c_k, label], ...]}  언급되지 않은 셀은 free
    {"table": [label 또는 -1, ...]}            cell 인덱스 순서의 dense 테이블
    {"knowledge": true}                         태스크의 β*
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from app.core.exceptions import TaskValidationError
from app.domain.maps import BetaMap
from app.domain.task import TaskSpec
from app.infrastructure.files.task_loader import PathLike, read_json


class BetaDocument(BaseModel):
    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={"example": {"entries": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]}},
    )

    entries: Optional[List[List[int]]] = None
    table: Optional[List[int]] = None
    knowledge: bool = False

    @model_validator(mode="after")
    def _exactly_one(self) -> "BetaDocument":
        given = sum([self.entries is not None, self.table is not None, self.knowledge])
        if given != 1:
            raise ValueError("β 문서는 entries, table, knowledge 중 정확히 하나를 가져야 합니다")
        return self


def build_beta(document: BetaDocument, task: TaskSpec) -> BetaMap:
    space = task.space
    if document.knowledge:
        return BetaMap.from_knowledge(task.knowledge)
    if document.table is not None:
        return BetaMap(space, task.label_count, tuple(document.table))
    for entry in document.entries or []:
        if len(entry) != space.k + 1:
            raise TaskValidationError("β entry must list k concept values and a label", details={"entry": entry})
    return BetaMap.from_entries(space, task.label_count, document.entries or [])


def load_beta(path: PathLike, task: TaskSpec) -> BetaMap:
    """
    Raises:
        TaskValidationError: 파일 없음, 스키마 위반, 범위 밖 라벨/world
    """
    raw = read_json(path, "beta")
    try:
        document = BetaDocument.model_validate(raw)
    except ValidationError as e:
        raise TaskValidationError(
            "malformed beta document",
            details={"errors": e.errors(include_url=False, include_context=False)},
        )
    return build_beta(document, task)
