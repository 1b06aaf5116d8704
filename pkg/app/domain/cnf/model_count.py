"""
모델 카운터

- exhaustive_model_count: 작은 수식에 대한 numpy 전수 열거 (검증 오라클)
- projected_model_count: pysat 솔버로 프로젝션 모델을 차단 절과 함께 열거
"""

import logging
from typing import Optional

import numpy as np
from pysat.formula import CNF
from pysat.solvers import Solver

from app.core.config import settings
from app.core.exceptions import BudgetExceededError, FormulaTooLargeError
from app.domain.cnf.formula import CnfFormula

logger = logging.getLogger(__name__)


def exhaustive_model_count(formula: CnfFormula) -> int:
    """
    만족 할당으로 확장 가능한 프로젝션 할당의 수

    모든 2^n 할당을 2^EXHAUSTIVE_CHUNK_BITS 단위 청크로 평가합니다.

    Raises:
        FormulaTooLargeError: 변수 수가 EXHAUSTIVE_MAX_VARS를 넘는 경우
    """
    n = formula.num_vars
    if n > settings.EXHAUSTIVE_MAX_VARS:
        raise FormulaTooLargeError(
            "formula too large for exhaustive counting",
            details={"vars": n, "max": settings.EXHAUSTIVE_MAX_VARS},
        )
    projection = np.asarray(formula.projection, dtype=np.int64) - 1
    seen = np.zeros(1 << len(projection), dtype=bool)
    weights = np.left_shift(np.int64(1), np.arange(len(projection), dtype=np.int64))
    shifts = np.arange(n, dtype=np.int64)
    clauses = [
        (np.asarray([abs(l) - 1 for l in c], dtype=np.int64), np.asarray([l > 0 for l in c], dtype=bool))
        for c in formula.clauses
    ]
    chunk = 1 << settings.EXHAUSTIVE_CHUNK_BITS
    total = 1 << n
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((idx[:, None] >> shifts[None, :]) & 1).astype(bool)
        ok = np.ones(len(idx), dtype=bool)
        for variables, positive in clauses:
            ok &= np.any(bits[:, variables] == positive[None, :], axis=1)
            if not ok.any():
                break
        if not ok.any():
            continue
        keys = bits[ok][:, projection].astype(np.int64) @ weights if len(projection) else np.zeros(
            int(ok.sum()), dtype=np.int64
        )
        seen[keys] = True
    return int(seen.sum())


def projected_model_count(formula: CnfFormula, limit: Optional[int] = None) -> int:
    """
    pysat 기반 프로젝션 모델 카운트

    모델을 찾을 때마다 프로젝션 변수에 대한 차단 절을 추가합니다.

    Raises:
        BudgetExceededError: 모델 수가 limit을 넘는 경우
    """
    cnf = CNF(from_clauses=[list(c) for c in formula.clauses])
    projection = list(formula.projection)
    count = 0
    with Solver(name="m22", bootstrap_with=cnf.clauses) as solver:
        while solver.solve():
            model = solver.get_model()
            count += 1
            if limit is not None and count > limit:
                raise BudgetExceededError("projected model count limit exceeded", details={"limit": limit})
            if not projection:
                break
            # 모델에 없는 프로젝션 변수는 거짓으로 읽음
            assigned = {abs(lit): lit for lit in model}
            solver.add_clause([-assigned.get(v, -v) for v in projection])
    logger.debug(f"[ModelCount] pysat 열거 완료 - models: {count}")
    return count
