"""
파일 입출력 (태스크, 레이어, β, 예측 덤프, 리포트)
"""

from app.infrastructure.files.beta_loader import BetaDocument, load_beta
from app.infrastructure.files.dump_reader import read_dump
from app.infrastructure.files.layer_loader import load_layer
from app.infrastructure.files.report_writer import ReportWriter, write_bytes
from app.infrastructure.files.task_loader import LoadedTask, load_task, read_json

__all__ = [
    "BetaDocument",
    "LoadedTask",
    "ReportWriter",
    "load_beta",
    "load_layer",
    "load_task",
    "read_dump",
    "read_json",
    "write_bytes",
]
