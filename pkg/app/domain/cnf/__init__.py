"""
CNF 내보내기 모듈
"""

from app.domain.cnf.dimacs import parse_dimacs, render_dimacs, write_dimacs
from app.domain.cnf.encoder import decode_assignment, encode_task
from app.domain.cnf.formula import CnfFormula, CnfTarget, SelectorKind, VarRole
from app.domain.cnf.model_count import exhaustive_model_count, projected_model_count

__all__ = [
    "CnfFormula",
    "CnfTarget",
    "SelectorKind",
    "VarRole",
    "decode_assignment",
    "encode_task",
    "exhaustive_model_count",
    "parse_dimacs",
    "projected_model_count",
    "render_dimacs",
    "write_dimacs",
]
