"""
문서 -> TaskSpec 변환
"""

import logging
from typing import Any, Dict, Tuple, Union

from pydantic import ValidationError

from app.core.exceptions import TaskValidationError
from app.domain.task.document import (
    ExcludeSupportDoc,
    IncludeSupportDoc,
    KnowledgeDoc,
    ProductSupportDoc,
    TaskDocument,
    WorldSelector,
)
from app.domain.task.family import AlphaFamily, FamilyKind
from app.domain.task.knowledge import (
    KnowledgeTable,
    builtin_knowledge,
    builtin_label_count,
)
from app.domain.task.space import ConceptSpace, Factor
from app.domain.task.support import SupportSet
from app.domain.task.task_spec import TaskSpec

logger = logging.getLogger(__name__)


def parse_document(document: Union[TaskDocument, Dict[str, Any]]) -> TaskDocument:
    """dict 문서를 검증된 TaskDocument로 변환"""
    if isinstance(document, TaskDocument):
        return document
    try:
        return TaskDocument.model_validate(document)
    except ValidationError as e:
        raise TaskValidationError(
            "malformed task document",
            details={"errors": e.errors(include_url=False, include_context=False)},
        )


def build_knowledge(doc: KnowledgeDoc, space: ConceptSpace, label_count: int) -> KnowledgeTable:
    if doc.table is not None:
        return KnowledgeTable.from_entries(space, label_count, doc.table)
    expected = builtin_label_count(doc.builtin, space, doc.m)
    if expected != label_count:
        raise TaskValidationError(
            "내장 지식의 라벨 수와 선언된 labels가 다릅니다",
            details={"builtin": doc.builtin.value, "expected": expected, "labels": label_count},
        )
    return builtin_knowledge(doc.builtin, space, doc.m)


def build_task(document: Union[TaskDocument, Dict[str, Any]]) -> TaskSpec:
    """
    태스크 문서로부터 검증된 TaskSpec 생성

    Args:
        document: TaskDocument 또는 같은 구조의 dict

    Returns:
        TaskSpec (knowledge는 dense 테이블로 구체화)

    Raises:
        TaskValidationError: 문서 형식 오류, knowledge not total, 범위 밖 항목,
            유효하지 않은 support world, tie-group cardinality mismatch
    """
    doc = parse_document(document)
    space = ConceptSpace(tuple(Factor(c.name, c.cardinality) for c in doc.concepts))
    knowledge = build_knowledge(doc.knowledge, space, doc.labels)

    support_doc = doc.support
    if support_doc == "full":
        support = SupportSet.full(space)
    elif isinstance(support_doc, IncludeSupportDoc):
        support = SupportSet.include(space, support_doc.include)
    elif isinstance(support_doc, ExcludeSupportDoc):
        support = SupportSet.exclude(space, support_doc.exclude)
    elif isinstance(support_doc, ProductSupportDoc):
        support = SupportSet.product(space, support_doc.product)
    else:  # pragma: no cover - pydantic이 막음
        raise TaskValidationError("알 수 없는 support 형식")

    if doc.alpha_family.kind is FamilyKind.JOINT:
        if doc.alpha_family.ties:
            raise TaskValidationError("joint 패밀리에는 ties를 지정할 수 없습니다")
        family = AlphaFamily.joint()
    else:
        family = AlphaFamily.factorized(space, doc.alpha_family.ties)

    task = TaskSpec(
        space=space,
        label_count=doc.labels,
        knowledge=knowledge,
        support=support,
        alpha_family=family,
        name=doc.name,
    )
    logger.debug(
        f"[TaskBuilder] 태스크 생성 - name: {doc.name}, worlds: {space.total_worlds}, "
        f"support: {len(support)}, family: {family.describe()}"
    )
    return task


def select_worlds(selector: WorldSelector, task: TaskSpec) -> Tuple[int, ...]:
    space = task.space
    if selector == "full":
        return tuple(range(space.total_worlds))
    if selector == "support":
        return task.support.indices
    return tuple(sorted({space.index_of(space.validate_world(w)) for w in selector}))
