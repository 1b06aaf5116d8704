"""
CNF 내보내기 서비스
"""

import io
import logging
from dataclasses import dataclass
from typing import Optional

from app.application.services.count_service import task_digest
from app.core.config import settings
from app.domain.cnf import (
    CnfFormula,
    CnfTarget,
    encode_task,
    exhaustive_model_count,
    projected_model_count,
    write_dimacs,
)
from app.domain.maps import Subtrahend, SubtrahendPolicy, select_subtrahend
from app.domain.mitigations import conjoin_multitask
from app.infrastructure.files import load_task, write_bytes

logger = logging.getLogger(__name__)


@dataclass
class ExportSummary:
    task_digest: str
    formula: CnfFormula
    dimacs: bytes
    out: Optional[str] = None
    subtrahend: Optional[Subtrahend] = None
    model_count: Optional[int] = None


class ExportService:
    def __init__(self, policy: SubtrahendPolicy = SubtrahendPolicy.AUTO, cap: Optional[int] = None):
        self.policy = policy
        self.cap = cap

    def export(
        self,
        task_path: str,
        target: CnfTarget = CnfTarget.OPTIMAL_PAIRS,
        trim_beta: bool = False,
        use_mitigations: bool = False,
        out: Optional[str] = None,
        count: bool = False,
    ) -> ExportSummary:
        """
        태스크를 DIMACS로 인코딩 (out이 주어지면 파일로 저장)

        count이면 작은 수식은 exhaustive, 큰 수식은 pysat 열거로 프로젝션 모델 수를 함께 계산합니다.
        """
        loaded = load_task(task_path)
        ms = loaded.select_mitigations(use_mitigations).validate(loaded.task.space)
        target = CnfTarget(target)
        subtrahend = None
        if target is CnfTarget.OPTIMAL_PAIRS:
            subtrahend = select_subtrahend(conjoin_multitask(loaded.task, ms), ms, self.policy, self.cap)
        formula = encode_task(loaded.task, ms, target, trim_beta, subtrahend)

        sink = io.BytesIO()
        write_dimacs(formula, sink)
        payload = sink.getvalue()
        if out is not None:
            write_bytes(out, payload)
            logger.info(f"[ExportService] DIMACS 저장 - out: {out}, bytes: {len(payload)}")

        model_count = None
        if count:
            if formula.num_vars <= settings.EXHAUSTIVE_MAX_VARS:
                model_count = exhaustive_model_count(formula)
            else:
                model_count = projected_model_count(formula)
        return ExportSummary(
            task_digest=task_digest(loaded, use_mitigations),
            formula=formula,
            dimacs=payload,
            out=out,
            subtrahend=subtrahend,
            model_count=model_count,
        )
