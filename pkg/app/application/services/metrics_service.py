"""
예측 덤프 평가 서비스
"""

from typing import Optional, Tuple

from app.domain.metrics import MetricsReport, evaluate_dump
from app.infrastructure.files import load_beta, load_task, read_dump


class MetricsService:
    """metrics 명령 서비스"""

    def evaluate(
        self, task_path: str, dump_path: str, beta_path: Optional[str] = None
    ) -> Tuple[MetricsReport, str]:
        """
        Args:
            task_path: 개념 공간과 라벨 수를 제공하는 태스크 파일
            dump_path: 예측 덤프 CSV
            beta_path: F1(β) 계산에 쓸 β 파일 (선택)

        Returns:
            (MetricsReport, 태스크 digest)
        """
        loaded = load_task(task_path)
        task = loaded.task
        dump = read_dump(dump_path, task.space, task.label_count)
        beta = load_beta(beta_path, task) if beta_path is not None else None
        report = evaluate_dump(dump, beta)
        return report, task.digest()
