"""
rscount 명령 실행

각 명령은 (리포트 출력 후) 종료 코드를 반환합니다.
0: 성공, 1: 사용법 오류, 2: 예산 초과/부분 결과, 3: 검증 오류
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from app.application.services import (
    CountService,
    ExportService,
    ExtremalityService,
    IntendedService,
    MetricsService,
    SelftestService,
)
from app.core.exceptions import EXIT_BUDGET, EXIT_OK, RsCountError, SelftestMismatchError
from app.domain.counting import CountOptions
from app.infrastructure.files import ReportWriter
from app.presentation.cli.parser import build_parser
from app.presentation.schemas import (
    CountReportSchema,
    EnumerationReportSchema,
    ErrorResponse,
    ExportReportSchema,
    ExtremalityReportSchema,
    IntendedReportSchema,
    MetricsReportSchema,
    SelftestCheckSchema,
    SelftestReportSchema,
    SubtrahendSchema,
)

logger = logging.getLogger(__name__)


def _count(args: argparse.Namespace, writer: ReportWriter) -> int:
    options = CountOptions(
        method=args.method,
        workers=args.workers,
        budget=args.budget,
        subtrahend=args.subtrahend,
        checked=args.checked,
    )
    report = CountService(options).count(args.task, args.mode, args.mitigations)
    writer.write(CountReportSchema.from_report(report, timing=not args.no_timing), title="count report")
    return EXIT_OK if report.exact else EXIT_BUDGET


def _enumerate(args: argparse.Namespace, writer: ReportWriter) -> int:
    service = CountService(CountOptions(budget=args.budget))
    result, digest = service.enumerate(args.task, args.limit, args.target, args.mitigations)
    schema = EnumerationReportSchema.from_result(result, digest, args.target, args.limit)
    if writer.as_json:
        writer.write(schema)
    else:
        writer.write(schema, title="enumeration", exclude={"entries"})
        writer.write_lines(
            [f"#{i + 1}  alpha={e.alpha}  beta={e.beta}" for i, e in enumerate(schema.entries)]
        )
    return EXIT_OK if result.exact else EXIT_BUDGET


def _intended(args: argparse.Namespace, writer: ReportWriter) -> int:
    summary = IntendedService().intended_count(args.task, args.family_aware, args.mitigations)
    schema = IntendedReportSchema(
        task_digest=summary.task_digest,
        subtrahend=str(summary.subtrahend.value),
        formula=summary.subtrahend.formula.value,
        closed_form=str(summary.closed_form),
        witness_space=str(summary.witness_space),
    )
    writer.write(schema, title="intended count")
    return EXIT_OK


def _export(args: argparse.Namespace, writer: ReportWriter) -> int:
    service = ExportService(policy=args.subtrahend)
    summary = service.export(args.task, args.target, args.trim_beta, args.mitigations, args.out, args.count)
    if args.out is None:
        # 표준 출력에는 DIMACS만 씁니다
        writer.stream.write(summary.dimacs.decode("utf-8"))
        return EXIT_OK
    formula = summary.formula
    subtrahend = summary.subtrahend
    schema = ExportReportSchema(
        task_digest=summary.task_digest,
        target=formula.target.value if formula.target else args.target,
        out=summary.out,
        num_vars=formula.num_vars,
        clauses=formula.clause_count,
        projection_vars=len(formula.projection),
        beta_multiplier=str(formula.beta_multiplier),
        trimmed_cells=len(formula.dropped_cells),
        subtrahend=None
        if subtrahend is None
        else SubtrahendSchema(value=str(subtrahend.value), formula=subtrahend.formula.value),
        model_count=None if summary.model_count is None else str(summary.model_count),
    )
    writer.write(schema, title="cnf export")
    return EXIT_OK


def _extremality(args: argparse.Namespace, writer: ReportWriter) -> int:
    report = ExtremalityService(args.workers).check(args.layer, args.grid, args.pairs, args.seed)
    writer.write(ExtremalityReportSchema.from_report(report), title="extremality")
    return EXIT_OK


def _metrics(args: argparse.Namespace, writer: ReportWriter) -> int:
    report, digest = MetricsService().evaluate(args.task, args.dump, args.beta)
    writer.write(MetricsReportSchema.from_report(report, digest), title="metrics")
    return EXIT_OK


def _selftest(args: argparse.Namespace, writer: ReportWriter) -> int:
    outcome = SelftestService(workers=args.workers).run()
    checks = [SelftestCheckSchema(**vars(c)) for c in outcome.checks]
    failed = outcome.failed
    if writer.as_json:
        writer.write(SelftestReportSchema(passed=len(checks) - len(failed), failed=len(failed), checks=checks))
    else:
        lines = []
        for check in checks:
            if check.passed:
                lines.append(f"PASS  {check.name}")
            else:
                lines.append(
                    f"FAIL  {check.name}  expected={check.expected}  actual={check.actual}  "
                    f"task_digest={check.task_digest}"
                )
        lines.append(f"{len(checks) - len(failed)} passed, {len(failed)} failed")
        writer.write_lines(lines)
    if failed:
        raise SelftestMismatchError(
            f"selftest mismatch in {len(failed)} check(s); first failing task digest {failed[0].task_digest}",
            details={"task_digests": sorted({c.task_digest for c in failed})},
        )
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, ReportWriter], int]] = {
    "count": _count,
    "enumerate": _enumerate,
    "intended-count": _intended,
    "export-cnf": _export,
    "check-extremality": _extremality,
    "metrics": _metrics,
    "selftest": _selftest,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    CLI 실행

    Args:
        argv: 인자 목록 (None이면 sys.argv[1:])

    Returns:
        종료 코드
    """
    arguments: List[str] = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in arguments
    try:
        args = build_parser().parse_args(arguments)
        writer = ReportWriter(as_json=args.json)
        logger.debug(f"[CLI] 명령 실행 - command: {args.command}")
        return COMMANDS[args.command](args, writer)
    except RsCountError as e:
        sys.stderr.write(f"rscount: error: {e.message} [{e.error_code}]\n")
        if as_json:
            ReportWriter(as_json=True).write(ErrorResponse.from_error(e))
        logger.debug(f"[CLI] 오류 - code: {e.error_code}, details: {e.details}")
        return e.exit_code
