"""
DIMACS 직렬화

순서: `c ind ... 0` 프로젝션 줄, `c legend` 줄, `p cnf` 헤더, 절.
"""

from typing import BinaryIO, List

from app.core.exceptions import TaskValidationError
from app.domain.cnf.formula import CnfFormula

IND_CHUNK = 10


def render_dimacs(formula: CnfFormula) -> str:
    lines: List[str] = []
    projection = list(formula.projection)
    for start in range(0, len(projection), IND_CHUNK):
        chunk = projection[start:start + IND_CHUNK]
        lines.append("c ind " + " ".join(str(v) for v in chunk) + " 0")
    for entry in formula.header:
        lines.append(f"c legend {entry}")
    for var in sorted(formula.roles):
        lines.append(f"c legend {var} {formula.roles[var].text}")
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def write_dimacs(formula: CnfFormula, sink: BinaryIO) -> None:
    """바이트 스트림에 DIMACS 기록 (같은 수식이면 같은 바이트)"""
    sink.write(render_dimacs(formula).encode("utf-8"))


def parse_dimacs(text: str) -> CnfFormula:
    """
    DIMACS 텍스트 -> CnfFormula (범례는 header 문자열로만 보존)

    Raises:
        TaskValidationError: 헤더가 없거나 절 수가 맞지 않는 경우
    """
    num_vars = None
    declared = None
    clauses = []
    projection: List[int] = []
    header: List[str] = []
    pending: List[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c ind "):
            projection.extend(int(tok) for tok in line[6:].split() if tok != "0")
            continue
        if line.startswith("c legend "):
            header.append(line[9:])
            continue
        if line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise TaskValidationError("malformed DIMACS header", details={"line": line})
            num_vars, declared = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if num_vars is None:
        raise TaskValidationError("missing DIMACS header")
    if pending or len(clauses) != declared:
        raise TaskValidationError(
            "DIMACS clause count mismatch", details={"declared": declared, "parsed": len(clauses)}
        )
    return CnfFormula(
        num_vars=num_vars, clauses=clauses, projection=tuple(projection), header=header
    ).validate()
