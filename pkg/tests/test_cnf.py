"""
CNF 내보내기 테스트
"""
import io

import pytest
from pysat.solvers import Solver

from app.core.exceptions import FormulaTooLargeError, InputDomainError, TaskValidationError
from app.domain.cnf import (
    CnfFormula,
    CnfTarget,
    SelectorKind,
    decode_assignment,
    encode_task,
    exhaustive_model_count,
    parse_dimacs,
    projected_model_count,
    render_dimacs,
    write_dimacs,
)
from app.domain.counting import naive_count_pairs
from app.domain.maps import Subtrahend, SubtrahendFormula, is_optimal_pair
from app.domain.mitigations import build_mitigations
from app.domain.task import build_task


def _corner_support_task():
    """support = {(0,0)} 인 tied 이진 sum-parity (도달 불가 셀 존재)"""
    return build_task(
        {
            "concepts": [{"name": "d1", "cardinality": 2}, {"name": "d2", "cardinality": 2}],
            "labels": 2,
            "knowledge": {"builtin": "sum_parity"},
            "support": {"include": [[0, 0]]},
            "alpha_family": {"kind": "tied"},
        }
    )


class TestDimacs:
    """DIMACS 직렬화 테스트"""

    def test_exact_bytes(self):
        formula = CnfFormula(num_vars=2, clauses=[(1, -2)], projection=(1,))
        assert render_dimacs(formula) == "c ind 1 0\np cnf 2 1\n1 -2 0\n"

    def test_projection_chunks(self):
        formula = CnfFormula(num_vars=12, clauses=[(12,)], projection=tuple(range(1, 13)))
        lines = render_dimacs(formula).splitlines()
        assert lines[0] == "c ind 1 2 3 4 5 6 7 8 9 10 0"
        assert lines[1] == "c ind 11 12 0"

    def test_write_is_deterministic(self, tied_parity):
        first, second = io.BytesIO(), io.BytesIO()
        write_dimacs(encode_task(tied_parity), first)
        write_dimacs(encode_task(tied_parity), second)
        assert first.getvalue() == second.getvalue()
        assert first.getvalue().decode("utf-8") == render_dimacs(encode_task(tied_parity))

    def test_parse_keeps_count(self, tied_parity):
        formula = encode_task(tied_parity)
        parsed = parse_dimacs(render_dimacs(formula))
        assert parsed.num_vars == formula.num_vars
        assert parsed.projection == formula.projection
        assert parsed.clauses == [tuple(c) for c in formula.clauses]
        assert exhaustive_model_count(parsed) == exhaustive_model_count(formula)

    def test_parse_errors(self):
        with pytest.raises(TaskValidationError, match="missing DIMACS header"):
            parse_dimacs("1 -2 0\n")
        with pytest.raises(TaskValidationError, match="clause count mismatch"):
            parse_dimacs("p cnf 2 2\n1 -2 0\n")
        with pytest.raises(TaskValidationError, match="undeclared variable"):
            parse_dimacs("p cnf 1 1\n1 -2 0\n")


class TestModelCount:
    """모델 카운터 테스트"""

    def test_tautology(self):
        formula = CnfFormula(num_vars=3, clauses=[(1, -1), (2, -2), (3, -3)], projection=(1, 2, 3))
        assert exhaustive_model_count(formula) == 8

    def test_exactly_one(self):
        clauses = [(1, 2, 3), (-1, -2), (-1, -3), (-2, -3)]
        formula = CnfFormula(num_vars=3, clauses=clauses, projection=(1, 2, 3))
        assert exhaustive_model_count(formula) == 3
        assert projected_model_count(formula) == 3

    def test_projection_collapses_models(self):
        """프로젝션 밖 변수는 모델을 늘리지 않음"""
        clauses = [(1, 2, 3), (-1, -2), (-1, -3), (-2, -3)]
        formula = CnfFormula(num_vars=3, clauses=clauses, projection=(1,))
        assert exhaustive_model_count(formula) == 2
        assert projected_model_count(formula) == 2

    def test_projected_variable_outside_clauses(self):
        """절에 나오지 않는 프로젝션 변수도 두 값 모두 셈"""
        formula = CnfFormula(num_vars=3, clauses=[(1,)], projection=(1, 2, 3))
        assert exhaustive_model_count(formula) == 4
        assert projected_model_count(formula) == 4

    def test_unsat(self):
        formula = CnfFormula(num_vars=1, clauses=[(1,), (-1,)], projection=(1,))
        assert exhaustive_model_count(formula) == 0
        assert projected_model_count(formula) == 0

    def test_too_large(self):
        formula = CnfFormula(num_vars=25, clauses=[(25,)], projection=(1,))
        with pytest.raises(FormulaTooLargeError) as exc:
            exhaustive_model_count(formula)
        assert exc.value.exit_code == 3


class TestEncoder:
    """태스크 인코딩 테스트"""

    def test_tied_alphas(self, tied_parity):
        formula = encode_task(tied_parity, target=CnfTarget.OPTIMAL_ALPHAS)
        assert len(formula.vars_of(SelectorKind.ALPHA)) == 4
        assert formula.projection == tuple(formula.vars_of(SelectorKind.ALPHA))
        assert exhaustive_model_count(formula) == 2

    def test_tied_pairs(self, tied_parity):
        formula = encode_task(tied_parity)
        assert formula.num_vars == 12
        assert len(formula.vars_of(SelectorKind.BETA)) == 8
        assert exhaustive_model_count(formula) == 2
        assert projected_model_count(formula) == 2

    def test_joint_pairs(self, joint_parity):
        formula = encode_task(joint_parity)
        assert formula.num_vars == 24
        assert projected_model_count(formula) == 168

    def test_joint_alphas(self, joint_parity):
        formula = encode_task(joint_parity, target=CnfTarget.OPTIMAL_ALPHAS)
        assert projected_model_count(formula) == 84

    @pytest.mark.parametrize("trim", [False, True])
    def test_trim_beta_multiplier(self, trim):
        """도달 불가 셀을 빼도 (모델 수 x 배수) 는 naive 쌍 수와 같음"""
        task = _corner_support_task()
        formula = encode_task(task, trim_beta=trim)
        expected = naive_count_pairs(task).optimal_pairs
        assert expected == 32
        assert exhaustive_model_count(formula) * formula.beta_multiplier == expected
        if trim:
            assert formula.dropped_cells == (1, 2)
            assert formula.beta_multiplier == 4
        else:
            assert formula.beta_multiplier == 1

    def test_legend_lists_every_projected_var(self, tied_parity):
        formula = encode_task(tied_parity)
        text = render_dimacs(formula)
        for var in formula.projection:
            assert f"c legend {var} " in text
        assert "c legend target optimal_pairs" in text

    def test_subtrahend_header(self, tied_parity):
        subtrahend = Subtrahend(1, SubtrahendFormula.FAMILY_AWARE)
        formula = encode_task(tied_parity, subtrahend=subtrahend)
        assert f"subtrahend 1 {SubtrahendFormula.FAMILY_AWARE.value}" in formula.header
        assert "jrs = projected_count * beta_multiplier - subtrahend" in formula.header

    def test_supervision_pins_identity(self, joint_parity):
        ms = build_mitigations({"concept_supervision": {"factors": [0, 1], "worlds": "full"}}, joint_parity)
        formula = encode_task(joint_parity, ms, target=CnfTarget.OPTIMAL_ALPHAS)
        assert projected_model_count(formula) == 1

    def test_reconstruction_alphas(self, joint_parity):
        ms = build_mitigations({"reconstruction": True}, joint_parity)
        formula = encode_task(joint_parity, ms, target=CnfTarget.OPTIMAL_ALPHAS)
        assert projected_model_count(formula) == 24

    def test_multitask_sum_head(self, tied_parity):
        ms = build_mitigations(
            {"multitask": [{"name": "sum", "knowledge": {"builtin": "sum"}, "worlds": "support", "labels": 3}]},
            tied_parity,
        )
        formula = encode_task(tied_parity, ms, target=CnfTarget.OPTIMAL_ALPHAS)
        assert formula.vars_of(SelectorKind.AUX)
        assert projected_model_count(formula) == 2


class TestDecode:
    """만족 할당 복원 테스트"""

    def test_models_are_optimal(self, tied_parity):
        formula = encode_task(tied_parity)
        decoded = []
        with Solver(name="m22", bootstrap_with=[list(c) for c in formula.clauses]) as solver:
            for model in solver.enum_models():
                alpha, beta = decode_assignment(formula, tied_parity, model)
                assert is_optimal_pair(alpha, beta, tied_parity)
                decoded.append(alpha.tables)
        assert sorted(decoded) == [((0, 1),), ((1, 0),)]

    def test_missing_image(self, tied_parity):
        formula = encode_task(tied_parity)
        with pytest.raises(InputDomainError, match="exactly one image"):
            decode_assignment(formula, tied_parity, [])
