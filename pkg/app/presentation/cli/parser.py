"""
rscount 인자 파서
"""

import argparse
from typing import NoReturn, Union

from app.core.config import settings
from app.core.exceptions import UsageError
from app.domain.cnf import CnfTarget
from app.domain.counting import CountMethod, SearchTarget
from app.domain.maps import SubtrahendPolicy

MODES = ("rs", "jrs", "jrs-nonredundant")


class CliArgumentParser(argparse.ArgumentParser):
    """사용법 오류를 UsageError로 올리는 파서 (종료 코드 1)"""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message, details={"usage": self.format_usage().strip()})


def pair_budget(value: str) -> Union[int, str]:
    if value == "all":
        return value
    try:
        budget = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'all' or a positive integer")
    if budget < 1:
        raise argparse.ArgumentTypeError("expected 'all' or a positive integer")
    return budget


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {value}")
    if number < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return number


def build_parser() -> CliArgumentParser:
    common = CliArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="구조화된 JSON 리포트 출력")
    common.add_argument("--no-timing", action="store_true", help="리포트에서 경과 시간 제외")

    parser = CliArgumentParser(
        prog="rscount",
        description=f"{settings.APP_NAME} {settings.APP_VERSION}: reasoning shortcut counting toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    count = sub.add_parser("count", parents=[common], help="RS / JRS 개수")
    count.add_argument("--task", required=True)
    count.add_argument("--mode", choices=MODES, default="jrs")
    count.add_argument("--mitigations", action="store_true", help="태스크의 mitigations 블록 적용")
    count.add_argument("--workers", type=positive_int, default=None)
    count.add_argument("--budget", type=positive_int, default=None, help="탐색 노드 예산")
    count.add_argument("--method", choices=[m.value for m in CountMethod], default=CountMethod.AUTO.value)
    count.add_argument(
        "--subtrahend", choices=[p.value for p in SubtrahendPolicy], default=SubtrahendPolicy.AUTO.value
    )
    count.add_argument("--checked", action="store_true", help="128비트 누산 검사 모드")

    enumerate_ = sub.add_parser("enumerate", parents=[common], help="허용 α와 강제된 β 열거")
    enumerate_.add_argument("--task", required=True)
    enumerate_.add_argument("--limit", type=positive_int, default=10)
    enumerate_.add_argument("--target", choices=[t.value for t in SearchTarget], default=SearchTarget.JRS.value)
    enumerate_.add_argument("--mitigations", action="store_true")
    enumerate_.add_argument("--budget", type=positive_int, default=None)

    intended = sub.add_parser("intended-count", parents=[common], help="JRS subtrahend")
    intended.add_argument("--task", required=True)
    intended.add_argument("--family-aware", action="store_true")
    intended.add_argument("--mitigations", action="store_true")

    export = sub.add_parser("export-cnf", parents=[common], help="DIMACS CNF 내보내기")
    export.add_argument("--task", required=True)
    export.add_argument("--target", choices=[t.value for t in CnfTarget], default=CnfTarget.OPTIMAL_PAIRS.value)
    export.add_argument("--trim-beta", action="store_true")
    export.add_argument("--mitigations", action="store_true")
    export.add_argument("--out", default=None, help="출력 경로 (생략 시 표준 출력)")
    export.add_argument(
        "--subtrahend", choices=[p.value for p in SubtrahendPolicy], default=SubtrahendPolicy.AUTO.value
    )
    export.add_argument("--count", action="store_true", help="프로젝션 모델 수도 계산")

    extremality = sub.add_parser("check-extremality", parents=[common], help="추론 레이어 extremality 검사")
    extremality.add_argument("--layer", required=True)
    extremality.add_argument("--grid", type=int, default=None)
    extremality.add_argument("--pairs", type=pair_budget, default="all")
    extremality.add_argument("--seed", type=int, default=0)
    extremality.add_argument("--workers", type=positive_int, default=None)

    metrics = sub.add_parser("metrics", parents=[common], help="예측 덤프 평가")
    metrics.add_argument("--dump", required=True)
    metrics.add_argument("--task", required=True)
    metrics.add_argument("--beta", default=None)

    selftest = sub.add_parser("selftest", parents=[common], help="내장 오라클 코퍼스 실행")
    selftest.add_argument("--workers", type=positive_int, default=1)
    return parser
