"""
추론 레이어 파일 로더
"""

import logging

from pydantic import ValidationError

from app.core.exceptions import TaskValidationError
from app.domain.extremality import InferenceLayerSpec, LayerDocument
from app.infrastructure.files.task_loader import PathLike, read_json

logger = logging.getLogger(__name__)


def load_layer(path: PathLike) -> InferenceLayerSpec:
    """
    레이어 JSON 문서를 InferenceLayerSpec으로 변환

    Raises:
        TaskValidationError: 파일 없음, 스키마 위반, 행 형태/값 오류
    """
    raw = read_json(path, "layer")
    try:
        document = LayerDocument.model_validate(raw)
    except ValidationError as e:
        raise TaskValidationError(
            "malformed layer document",
            details={"errors": e.errors(include_url=False, include_context=False)},
        )
    layer = InferenceLayerSpec.from_document(document)
    logger.info(
        f"[LayerLoader] 레이어 로드 - kind: {layer.kind.value}, worlds: {layer.space.total_worlds}, "
        f"labels: {layer.label_count}"
    )
    return layer
