"""
리포트 스키마

개수는 항상 10진 문자열로 직렬화합니다.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.domain.counting import CountReport, EnumerationResult
from app.domain.extremality import ExtremalityReport
from app.domain.metrics import MetricsReport
from app.presentation.schemas.common import decimal


class SubtrahendSchema(BaseModel):
    value: str = Field(..., description="JRS 합에서 뺀 값")
    formula: str = Field(..., description="closed_form | family_aware | corollary")


class CountReportSchema(BaseModel):
    """count 명령 리포트"""

    task_digest: str = Field(..., description="정규화된 태스크+미티게이션의 SHA-256")
    task_name: Optional[str] = None
    family: str
    target: str = Field(..., description="rs | jrs | jrs-nonredundant")
    method: str
    workers: int
    exact: bool = Field(..., description="예산 소진 없이 끝났는지")
    count: Optional[str] = Field(None, description="target에 해당하는 대표 개수")
    rs_admissible_alpha_count: Optional[str] = None
    rs_count: Optional[str] = None
    rs_intended_count: Optional[str] = None
    admissible_alpha_count: Optional[str] = None
    optimal_pair_count: Optional[str] = None
    jrs_count_redundant: Optional[str] = None
    jrs_count_nonredundant: Optional[str] = None
    intended_subtrahend: Optional[SubtrahendSchema] = None
    mitigations: List[str] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)
    nodes: int = 0
    elapsed_seconds: Optional[float] = None

    @classmethod
    def from_report(cls, report: CountReport, timing: bool = True) -> "CountReportSchema":
        subtrahend = report.intended_subtrahend
        return cls(
            task_digest=report.task_digest,
            task_name=report.task_name,
            family=report.family,
            target=report.target,
            method=report.method,
            workers=report.workers,
            exact=report.exact,
            count=decimal(report.headline),
            rs_admissible_alpha_count=decimal(report.rs_admissible_alpha_count),
            rs_count=decimal(report.rs_count),
            rs_intended_count=decimal(report.rs_intended_count),
            admissible_alpha_count=decimal(report.admissible_alpha_count),
            optimal_pair_count=decimal(report.optimal_pair_count),
            jrs_count_redundant=decimal(report.jrs_count_redundant),
            jrs_count_nonredundant=decimal(report.jrs_count_nonredundant),
            intended_subtrahend=None
            if subtrahend is None
            else SubtrahendSchema(value=str(subtrahend.value), formula=subtrahend.formula.value),
            mitigations=list(report.mitigations),
            warnings=list(report.warnings),
            nodes=report.nodes,
            elapsed_seconds=report.elapsed_seconds if timing else None,
        )


class EnumerationEntrySchema(BaseModel):
    alpha: Dict[str, Any] = Field(..., description="{'joint': [...]} 또는 {'tables': [...]}")
    beta: List[int] = Field(..., description="cell 순서의 β (free = -1)")


class EnumerationReportSchema(BaseModel):
    task_digest: str
    target: str
    limit: int
    returned: int
    truncated: bool
    exact: bool
    entries: List[EnumerationEntrySchema] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    @classmethod
    def from_result(cls, result: EnumerationResult, task_digest: str, target: str, limit: int) -> "EnumerationReportSchema":
        return cls(
            task_digest=task_digest,
            target=target,
            limit=limit,
            returned=len(result.entries),
            truncated=result.truncated,
            exact=result.exact,
            entries=[
                EnumerationEntrySchema(alpha=alpha.canonical(), beta=list(beta.table))
                for alpha, beta in result.entries
            ],
            warnings=list(result.warnings),
        )


class IntendedReportSchema(BaseModel):
    """intended-count 리포트"""

    task_digest: str
    subtrahend: str
    formula: str
    closed_form: str = Field(..., description="C[G] = Π m(ξ)! × Π |G_i|!")
    witness_space: str = Field(..., description="패밀리가 표현 가능한 증인 (π, ψ) 수")


class ExportReportSchema(BaseModel):
    task_digest: str
    target: str
    out: Optional[str] = None
    num_vars: int
    clauses: int
    projection_vars: int
    beta_multiplier: str
    trimmed_cells: int
    subtrahend: Optional[SubtrahendSchema] = None
    model_count: Optional[str] = Field(None, description="exhaustive 카운트 (--count 지정 시)")


class PairSchema(BaseModel):
    world: List[int]
    other: List[int]
    lam: Optional[float] = None


class ExtremalityReportSchema(BaseModel):
    """check-extremality 리포트"""

    satisfied: bool
    vacuous: bool
    worst_violation: Optional[float] = None
    worst_pair: Optional[PairSchema] = None
    pairs_scanned: int
    eligible_pairs: int
    ineligible_pairs: int
    grid_points: int
    refine_iterations: int
    satisfied_fraction: float
    tolerance: float
    boundary_pairs: List[PairSchema] = Field(default_factory=list)
    tied_worlds: List[List[int]] = Field(default_factory=list)
    seed: Optional[int] = None
    warnings: List[str] = Field(default_factory=list)

    @classmethod
    def from_report(cls, report: ExtremalityReport) -> "ExtremalityReportSchema":
        worst = None
        if report.worst_pair is not None:
            c, c2, lam = report.worst_pair
            worst = PairSchema(world=list(c), other=list(c2), lam=lam)
        return cls(
            satisfied=report.satisfied,
            vacuous=report.vacuous,
            worst_violation=report.worst_violation,
            worst_pair=worst,
            pairs_scanned=report.pairs_scanned,
            eligible_pairs=report.eligible_pairs,
            ineligible_pairs=report.ineligible_pairs,
            grid_points=report.grid_points,
            refine_iterations=report.refine_iterations,
            satisfied_fraction=report.satisfied_fraction,
            tolerance=report.tolerance,
            boundary_pairs=[PairSchema(world=list(a), other=list(b)) for a, b in report.boundary_pairs],
            tied_worlds=[list(w) for w in report.tied_worlds],
            seed=report.seed,
            warnings=list(report.warnings),
        )


class AlignmentSchema(BaseModel):
    pi: List[int] = Field(..., description="ground-truth factor i -> 예측 위치 π(i)")
    psi: List[List[int]] = Field(..., description="위치 j의 값 전단사")
    objective: float = Field(..., description="Σ|R_{i,π(i)}|")
    matched_rows: List[int]


class MetricsReportSchema(BaseModel):
    """metrics 리포트"""

    task_digest: str
    rows: int
    label_f1: float = Field(..., description="F1(Y)")
    concept_f1: float = Field(..., description="정렬 후 F1(C)")
    identity_concept_f1: float
    concept_collapse: float = Field(..., description="Cls(C)")
    beta_f1: Optional[float] = Field(None, description="F1(β) (--beta 지정 시)")
    alignment: AlignmentSchema
    warnings: List[str] = Field(default_factory=list)

    @classmethod
    def from_report(cls, report: MetricsReport, task_digest: str) -> "MetricsReportSchema":
        alignment = report.alignment
        return cls(
            task_digest=task_digest,
            rows=report.rows,
            label_f1=report.label_f1,
            concept_f1=report.concept_f1,
            identity_concept_f1=report.identity_concept_f1,
            concept_collapse=report.concept_collapse,
            beta_f1=report.beta_f1,
            alignment=AlignmentSchema(
                pi=list(alignment.perm),
                psi=[list(p) for p in alignment.psi],
                objective=alignment.objective,
                matched_rows=list(alignment.matched_rows),
            ),
            warnings=list(report.warnings),
        )


class SelftestCheckSchema(BaseModel):
    name: str
    passed: bool
    expected: str
    actual: str
    task_digest: str


class SelftestReportSchema(BaseModel):
    passed: int
    failed: int
    checks: List[SelftestCheckSchema] = Field(default_factory=list)
