"""
Intended 카운트 서비스 (JRS subtrahend)
"""

import logging
from dataclasses import dataclass
from typing import Optional

from app.application.services.count_service import task_digest
from app.domain.maps import Subtrahend, SubtrahendPolicy, intended_pair_count, select_subtrahend
from app.domain.maps.intended import witness_space_size
from app.domain.mitigations import conjoin_multitask
from app.infrastructure.files import load_task

logger = logging.getLogger(__name__)


@dataclass
class IntendedSummary:
    task_digest: str
    subtrahend: Subtrahend
    closed_form: int
    witness_space: int


class IntendedService:
    def __init__(self, cap: Optional[int] = None):
        self.cap = cap

    def intended_count(
        self,
        task_path: str,
        family_aware: bool = False,
        use_mitigations: bool = False,
        policy: SubtrahendPolicy = SubtrahendPolicy.AUTO,
    ) -> IntendedSummary:
        """
        count 명령이 쓰는 것과 같은 subtrahend 계산

        family_aware이면 정책과 무관하게 패밀리가 표현하는 증인 수를 셉니다.
        """
        loaded = load_task(task_path)
        ms = loaded.select_mitigations(use_mitigations).validate(loaded.task.space)
        conj = conjoin_multitask(loaded.task, ms)
        if family_aware:
            policy = SubtrahendPolicy.FAMILY_AWARE
        subtrahend = select_subtrahend(conj, ms, policy, self.cap)
        logger.info(
            f"[IntendedService] subtrahend - value: {subtrahend.value}, formula: {subtrahend.formula.value}"
        )
        return IntendedSummary(
            task_digest=task_digest(loaded, use_mitigations),
            subtrahend=subtrahend,
            closed_form=intended_pair_count(conj),
            witness_space=witness_space_size(conj),
        )
