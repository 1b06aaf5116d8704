"""
예측 덤프

행마다 (ground-truth world g, 예측 world c, 정답 라벨 y, 예측 라벨 ŷ) 를 가집니다.
CSV 헤더는 g_1..g_k, c_1..c_k, y, yhat 입니다.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd

from app.core.exceptions import TaskValidationError
from app.domain.task.space import ConceptSpace


def dump_columns(k: int) -> List[str]:
    """덤프 CSV의 기대 컬럼 순서"""
    return [f"g_{i + 1}" for i in range(k)] + [f"c_{i + 1}" for i in range(k)] + ["y", "yhat"]


@dataclass(frozen=True, eq=False)
class PredictionDump:
    """
    사후 평가 입력

    Args:
        space: 개념 공간 (G와 C가 공유)
        truth: (N, k) ground-truth 개념 값
        predicted: (N, k) 예측 개념 값
        y: (N,) 정답 라벨
        yhat: (N,) 예측 라벨
        label_count: |Y| (None이면 라벨 범위 검사 생략)
    """

    space: ConceptSpace
    truth: np.ndarray
    predicted: np.ndarray
    y: np.ndarray
    yhat: np.ndarray
    label_count: Optional[int] = None

    def __post_init__(self) -> None:
        k = self.space.k
        truth = np.asarray(self.truth, dtype=np.int64).reshape(-1, k)
        predicted = np.asarray(self.predicted, dtype=np.int64).reshape(-1, k)
        y = np.asarray(self.y, dtype=np.int64).ravel()
        yhat = np.asarray(self.yhat, dtype=np.int64).ravel()
        n = len(truth)
        if n == 0:
            raise TaskValidationError("prediction dump is empty")
        if not len(predicted) == len(y) == len(yhat) == n:
            raise TaskValidationError(
                "prediction dump columns have different lengths",
                details={"truth": n, "predicted": len(predicted), "y": len(y), "yhat": len(yhat)},
            )
        cards = np.asarray(self.space.cardinalities, dtype=np.int64)
        for name, block in (("g", truth), ("c", predicted)):
            bad = np.nonzero(np.any((block < 0) | (block >= cards[None, :]), axis=1))[0]
            if len(bad):
                raise TaskValidationError(
                    f"prediction dump has out-of-range {name} values",
                    details={"rows": [int(r) for r in bad[:10]]},
                )
        for name, labels in (("y", y), ("yhat", yhat)):
            upper = self.label_count if self.label_count is not None else np.iinfo(np.int64).max
            bad = np.nonzero((labels < 0) | (labels >= upper))[0]
            if len(bad):
                raise TaskValidationError(
                    f"prediction dump has out-of-range {name} labels",
                    details={"rows": [int(r) for r in bad[:10]], "labels": self.label_count},
                )
        for name, value in (("truth", truth), ("predicted", predicted), ("y", y), ("yhat", yhat)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @classmethod
    def from_frame(
        cls, frame: pd.DataFrame, space: ConceptSpace, label_count: Optional[int] = None
    ) -> "PredictionDump":
        """
        DataFrame에서 덤프 생성

        Raises:
            TaskValidationError: 헤더 불일치, 정수가 아닌 셀
        """
        expected = dump_columns(space.k)
        if list(frame.columns) != expected:
            raise TaskValidationError(
                "prediction dump header mismatch",
                details={"expected": expected, "found": [str(c) for c in frame.columns]},
            )
        if frame.empty:
            raise TaskValidationError("prediction dump is empty")
        if not all(pd.api.types.is_integer_dtype(frame[c]) for c in expected):
            raise TaskValidationError("prediction dump cells must be integers")
        k = space.k
        return cls(
            space=space,
            truth=frame[expected[:k]].to_numpy(dtype=np.int64),
            predicted=frame[expected[k:2 * k]].to_numpy(dtype=np.int64),
            y=frame["y"].to_numpy(dtype=np.int64),
            yhat=frame["yhat"].to_numpy(dtype=np.int64),
            label_count=label_count,
        )

    def to_frame(self) -> pd.DataFrame:
        data = np.column_stack([self.truth, self.predicted, self.y, self.yhat])
        return pd.DataFrame(data, columns=dump_columns(self.space.k))

    @property
    def rows(self) -> int:
        return len(self.y)

    def predicted_cells(self) -> np.ndarray:
        """예측 world의 cell 인덱스 (N,)"""
        return np.ravel_multi_index(tuple(self.predicted.T), self.space.cardinalities)
