#!/usr/bin/env python
"""
sum-parity 카운트 비교표 생성 스크립트

N = 3, 4, 5 의 sum-parity 태스크를 가능한 인코딩 조합 (α 패밀리, support, subtrahend 정책) 별로
정확히 세고, 공개된 참조 구간과 나란히 놓은 Markdown 표를 만듭니다.
참조 구간의 정확한 인코딩은 알려져 있지 않으므로 표는 어느 조합이 구간에 들어오는지만 보여줍니다.

출력 파일:
- docs/Counts_Table_Comparison.md : 비교표 (기본 경로)

사용법:
    python scripts/compare_counts_table.py
    python scripts/compare_counts_table.py --sizes 3 4 --workers 4
    python scripts/compare_counts_table.py --output ./counts.md
"""

import argparse
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Tuple

# 프로젝트 루트를 경로에 추가
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from dotenv import load_dotenv

# .env 파일 로드 (COUNT_WORKERS, SEARCH_BUDGET 등)
load_dotenv(project_root / ".env")

from app.core.exceptions import RsCountError
from app.domain.counting import CountOptions, count_jrs
from app.domain.maps import SubtrahendPolicy
from app.domain.task.benchmarks import biased_sum_parity_task, sum_parity_task

# N -> (RS 참조값, RS 허용 오차, non-redundant JRS 참조값, 허용 오차)
REFERENCE: Dict[int, Tuple[float, float, float, float]] = {
    3: (11.0, 0.0, 12.0, 0.0),
    4: (63.0, 0.0, 127.0, 6.0),
}

FAMILIES = ("tied", "untied", "joint")
POLICIES = (SubtrahendPolicy.FAMILY_AWARE, SubtrahendPolicy.CLOSED_FORM)


def within(value: Optional[int], reference: float, tolerance: float) -> str:
    if value is None:
        return "-"
    return "yes" if abs(value - reference) <= tolerance else "no"


def count_variant(n: int, family: str, biased: bool, policy: SubtrahendPolicy, workers: Optional[int]) -> dict:
    """한 인코딩 조합의 카운트"""
    task = biased_sum_parity_task(n, family) if biased else sum_parity_task(n, family)
    started = time.perf_counter()
    try:
        report = count_jrs(task, "nonredundant", options=CountOptions(workers=workers, subtrahend=policy))
    except RsCountError as e:
        print(f"[WARN] {task.name} ({policy.value}) 건너뜀: {e.message}")
        return {"task": task.name, "error": e.message}
    return {
        "task": task.name,
        "rs": report.rs_count,
        "jrs_nonredundant": report.jrs_count_nonredundant,
        "jrs_redundant": report.jrs_count_redundant,
        "exact": report.exact,
        "seconds": time.perf_counter() - started,
    }


def render(rows: List[dict]) -> str:
    lines = [
        "# sum-parity 카운트 비교표",
        "",
        "`scripts/compare_counts_table.py` 로 생성됩니다. 참조 구간은 N=3 (RS 1.10×10¹, non-redundant JRS 1.20×10¹),",
        "N=4 (RS 63, non-redundant JRS 127 ± 6) 입니다.",
        "",
        "| N | family | support | subtrahend | RS | JRS (non-redundant) | JRS (redundant) | RS 일치 | JRS 일치 | exact | 초 |",
        "|---|---|---|---|---|---|---|---|---|---|---|",
    ]
    for row in rows:
        if "error" in row:
            lines.append(
                f"| {row['n']} | {row['family']} | {row['support']} | {row['policy']} | "
                f"{row['error']} | - | - | - | - | - | - |"
            )
            continue
        ref = REFERENCE.get(row["n"])
        rs_ok = within(row["rs"], ref[0], ref[1]) if ref else "-"
        jrs_ok = within(row["jrs_nonredundant"], ref[2], ref[3]) if ref else "-"
        lines.append(
            f"| {row['n']} | {row['family']} | {row['support']} | {row['policy']} | {row['rs']} | "
            f"{row['jrs_nonredundant']} | {row['jrs_redundant']} | {rs_ok} | {jrs_ok} | "
            f"{'yes' if row['exact'] else 'no'} | {row['seconds']:.2f} |"
        )
    return "\n".join(lines) + "\n"


def main():
    parser = argparse.ArgumentParser(description="sum-parity 카운트 비교표 생성")
    parser.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5], help="숫자 최댓값 N 목록")
    parser.add_argument("--workers", type=int, default=None, help="분할 탐색 워커 수")
    parser.add_argument(
        "--output",
        type=str,
        default=str(project_root / "docs" / "Counts_Table_Comparison.md"),
        help="출력 Markdown 경로",
    )
    args = parser.parse_args()

    rows: List[dict] = []
    for n in args.sizes:
        for family in FAMILIES:
            for biased in (False, True):
                for policy in POLICIES:
                    print(f"[INFO] N={n}, family={family}, biased={biased}, subtrahend={policy.value}")
                    result = count_variant(n, family, biased, policy, args.workers)
                    result.update(
                        n=n, family=family, support="biased" if biased else "full", policy=policy.value
                    )
                    rows.append(result)

    output = Path(args.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(render(rows), encoding="utf-8")
    print(f"[INFO] 비교표 저장: {output} ({len(rows)} rows)")


if __name__ == "__main__":
    main()
