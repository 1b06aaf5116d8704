"""
CNF 수식 타입
"""

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from app.core.exceptions import TaskValidationError


class CnfTarget(str, enum.Enum):
    OPTIMAL_PAIRS = "optimal_pairs"
    OPTIMAL_ALPHAS = "optimal_alphas"


class SelectorKind(str, enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    AUX = "aux"


@dataclass(frozen=True)
class VarRole:
    """
    선택 변수의 의미

    - alpha: unit = (g,) joint world 또는 (group, value), value = 상
    - beta: unit = (cell,), value = 라벨
    - aux: unit = (head, cell), value = 보조 라벨
    """

    kind: SelectorKind
    unit: Tuple[int, ...]
    value: int
    text: str


@dataclass
class CnfFormula:
    """
    프로젝션 집합과 범례를 갖는 CNF

    변수 번호는 1부터 시작합니다.
    """

    num_vars: int
    clauses: List[Tuple[int, ...]]
    projection: Tuple[int, ...]
    roles: Dict[int, VarRole] = field(default_factory=dict)
    header: List[str] = field(default_factory=list)
    target: Optional[CnfTarget] = None
    beta_multiplier: int = 1
    dropped_cells: Tuple[int, ...] = ()

    def validate(self) -> "CnfFormula":
        for clause in self.clauses:
            if not clause:
                raise TaskValidationError("empty clause in formula")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise TaskValidationError(
                        "literal references an undeclared variable", details={"literal": lit}
                    )
        for v in self.projection:
            if not 1 <= v <= self.num_vars:
                raise TaskValidationError("projection variable out of range", details={"var": v})
            if self.roles and v not in self.roles:
                raise TaskValidationError("legend missing a projected variable", details={"var": v})
        return self

    def vars_of(self, kind: SelectorKind) -> List[int]:
        return sorted(v for v, role in self.roles.items() if role.kind is kind)

    @property
    def clause_count(self) -> int:
        return len(self.clauses)
