"""
최적 쌍 제약 -> CNF 인코더

one-hot 선택 변수:
- α 선택자: joint이면 (world, cell), factorized이면 (tie-group, 값, 상)
- β 선택자: (cell, 라벨)
- 보조 헤드 선택자: (헤드, cell, 보조 라벨) - 프로젝션에 포함되지 않음 (존재 조건)

일관성 절: support world g의 상이 c가 되는 α 항목 조합마다 (조합) -> β(c) = β*(g)
"""

import itertools
import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Set, Tuple

from app.core.exceptions import InputDomainError
from app.domain.cnf.formula import CnfFormula, CnfTarget, SelectorKind, VarRole
from app.domain.maps.alpha import AlphaMap
from app.domain.maps.beta import FREE, BetaMap
from app.domain.maps.intended import Subtrahend
from app.domain.mitigations.models import MitigationSet
from app.domain.mitigations.multitask import conjoin_multitask
from app.domain.task.task_spec import TaskSpec

logger = logging.getLogger(__name__)

Option = Tuple[Tuple[int, ...], int]  # (선택 변수들, 상 cell)


class _ClauseBuilder:
    def __init__(self) -> None:
        self.num_vars = 0
        self.clauses: List[Tuple[int, ...]] = []
        self.roles: Dict[int, VarRole] = {}

    def new_var(self, role: VarRole) -> int:
        self.num_vars += 1
        self.roles[self.num_vars] = role
        return self.num_vars

    def add(self, clause: Iterable[int]) -> None:
        self.clauses.append(tuple(clause))

    def exactly_one(self, variables: List[int]) -> None:
        self.add(variables)
        for a, b in itertools.combinations(variables, 2):
            self.add((-a, -b))


def _world_text(task: TaskSpec, index: int) -> str:
    return "(" + ",".join(str(v) for v in task.space.world_at(index)) + ")"


class _AlphaSelectors:
    """α 선택 변수와 support world별 상 선택지"""

    def __init__(self, builder: _ClauseBuilder, task: TaskSpec, ms: MitigationSet):
        self.task = task
        space = task.space
        family = task.alpha_family
        self.units: Dict[Tuple[int, ...], Dict[int, int]] = {}
        self.forbidden: Set[int] = set()

        if family.is_joint:
            W = space.total_worlds
            for g in range(W):
                self.units[(g,)] = {
                    c: builder.new_var(
                        VarRole(
                            SelectorKind.ALPHA,
                            (g,),
                            c,
                            f"alpha {_world_text(task, g)} -> {_world_text(task, c)}",
                        )
                    )
                    for c in range(W)
                }
        else:
            for gi, group in enumerate(family.groups):
                card = family.group_cardinality(space, gi)
                for v in range(card):
                    self.units[(gi, v)] = {
                        x: builder.new_var(
                            VarRole(
                                SelectorKind.ALPHA,
                                (gi, v),
                                x,
                                f"alpha group {gi} factors {list(group)} value {v} -> {x}",
                            )
                        )
                        for x in range(card)
                    }
        for selectors in self.units.values():
            builder.exactly_one(list(selectors.values()))
        self._supervise(builder, ms)

    def _supervise(self, builder: _ClauseBuilder, ms: MitigationSet) -> None:
        if not ms.has_supervision:
            return
        space = self.task.space
        family = self.task.alpha_family
        sup = ms.concept_supervision
        pinned_units: Set[int] = set()
        for g in sup.worlds:
            world = space.world_at(g)
            if family.is_joint:
                for c, var in self.units[(g,)].items():
                    image = space.world_at(c)
                    if any(image[i] != world[i] for i in sup.factors):
                        builder.add((-var,))
                        self.forbidden.add(var)
            else:
                for i in sup.factors:
                    unit = (family.group_of(i), world[i])
                    if self.units[unit][world[i]] in pinned_units:
                        continue
                    pinned_units.add(self.units[unit][world[i]])
                    for x, var in self.units[unit].items():
                        if x == world[i]:
                            builder.add((var,))
                        else:
                            self.forbidden.add(var)

    @property
    def variables(self) -> List[int]:
        return [var for selectors in self.units.values() for var in selectors.values()]

    def options(self, g: int) -> List[Option]:
        """world g의 가능한 (선택 변수 조합, 상 cell) 목록 (금지 변수를 포함한 조합 제외)"""
        space = self.task.space
        family = self.task.alpha_family
        if family.is_joint:
            return [((var,), c) for c, var in self.units[(g,)].items() if var not in self.forbidden]
        world = space.world_at(g)
        units = [(family.group_of(i), world[i]) for i in range(space.k)]
        result: List[Option] = []
        for image in itertools.product(*(range(card) for card in space.cardinalities)):
            chosen: Dict[Tuple[int, int], int] = {}
            consistent = True
            for unit, x in zip(units, image):
                # 같은 (그룹, 값) 항목은 하나의 상만 가질 수 있음
                if chosen.setdefault(unit, x) != x:
                    consistent = False
                    break
            if not consistent:
                continue
            selectors = tuple(sorted(self.units[unit][x] for unit, x in chosen.items()))
            if any(var in self.forbidden for var in selectors):
                continue
            result.append((selectors, space.index_of(image)))
        return result


def encode_task(
    task: TaskSpec,
    ms: Optional[MitigationSet] = None,
    target: CnfTarget = CnfTarget.OPTIMAL_PAIRS,
    trim_beta: bool = False,
    subtrahend: Optional[Subtrahend] = None,
) -> CnfFormula:
    """
    최적 쌍 제약 시스템을 CNF로 컴파일

    프로젝션은 optimal_pairs이면 α와 β 선택자, optimal_alphas이면 α 선택자입니다.
    trim_beta이면 어떤 support world의 상도 될 수 없는 셀의 β 선택자를 생략하고,
    생략된 셀의 |Y| 배수를 beta_multiplier에 기록합니다.
    """
    ms = (ms or MitigationSet.none()).validate(task.space)
    target = CnfTarget(target)
    conj = conjoin_multitask(task, ms)
    space = conj.space
    W = space.total_worlds
    Y = conj.label_count
    knowledge = conj.knowledge.labels
    builder = _ClauseBuilder()

    alphas = _AlphaSelectors(builder, conj, ms)
    options = {g: alphas.options(g) for g in conj.support.indices}
    reachable = sorted({c for opts in options.values() for _, c in opts})
    kept = reachable if trim_beta else list(range(W))
    kept_set = set(kept)
    dropped = tuple(c for c in range(W) if c not in kept_set)
    pinned = set(ms.pinned_cells)

    beta_vars: Dict[int, Dict[int, int]] = {}
    for c in kept:
        beta_vars[c] = {
            y: builder.new_var(
                VarRole(SelectorKind.BETA, (c,), y, f"beta {_world_text(conj, c)} -> {y}")
            )
            for y in range(Y)
        }
        builder.exactly_one(list(beta_vars[c].values()))

    for g, opts in options.items():
        label = int(knowledge[g])
        for selectors, c in opts:
            builder.add(tuple(-s for s in selectors) + (beta_vars[c][label],))

    for h, head in enumerate(conj.auxiliary):
        head_labels = head.knowledge.labels
        aux_vars: Dict[int, Dict[int, int]] = {}
        for g in head.worlds:
            for selectors, c in options[g]:
                if c not in aux_vars:
                    aux_vars[c] = {
                        z: builder.new_var(
                            VarRole(
                                SelectorKind.AUX,
                                (h, c),
                                z,
                                f"aux {head.name} {_world_text(conj, c)} -> {z}",
                            )
                        )
                        for z in range(head.knowledge.label_count)
                    }
                    builder.exactly_one(list(aux_vars[c].values()))
                builder.add(tuple(-s for s in selectors) + (aux_vars[c][int(head_labels[g])],))

    for c in sorted(pinned & kept_set):
        builder.add((beta_vars[c][int(knowledge[c])],))

    if ms.reconstruction:
        by_cell: Dict[int, List[Tuple[int, Tuple[int, ...]]]] = defaultdict(list)
        for g, opts in options.items():
            for selectors, c in opts:
                by_cell[c].append((g, selectors))
        for c in sorted(by_cell):
            for (g1, s1), (g2, s2) in itertools.combinations(by_cell[c], 2):
                if g1 != g2:
                    builder.add(tuple(-s for s in sorted(set(s1) | set(s2))))

    alpha_vars = alphas.variables
    if target is CnfTarget.OPTIMAL_PAIRS:
        projection = tuple(sorted(alpha_vars + [v for cells in beta_vars.values() for v in cells.values()]))
        multiplier = Y ** sum(1 for c in dropped if c not in pinned)
    else:
        projection = tuple(sorted(alpha_vars))
        multiplier = 1

    header = [
        f"target {target.value}",
        f"family {conj.alpha_family.describe()}",
        f"mitigations {','.join(ms.active_names()) or 'none'}",
        f"beta_multiplier {multiplier}",
        f"trimmed_cells {len(dropped)}",
    ]
    if subtrahend is not None:
        header.append(f"subtrahend {subtrahend.value} {subtrahend.formula.value}")
        header.append("jrs = projected_count * beta_multiplier - subtrahend")

    formula = CnfFormula(
        num_vars=builder.num_vars,
        clauses=builder.clauses,
        projection=projection,
        roles=builder.roles,
        header=header,
        target=target,
        beta_multiplier=multiplier,
        dropped_cells=dropped,
    ).validate()
    logger.info(
        f"[CnfEncoder] 인코딩 완료 - vars: {formula.num_vars}, clauses: {formula.clause_count}, "
        f"projection: {len(projection)}, target: {target.value}"
    )
    return formula


def decode_assignment(formula: CnfFormula, task: TaskSpec, assignment: Iterable[int]) -> Tuple[AlphaMap, BetaMap]:
    """
    만족 할당 -> (α, β)

    Args:
        assignment: 참인 변수는 양수, 거짓인 변수는 음수 리터럴 (pysat 모델 형식)

    Raises:
        InputDomainError: α 항목에 선택된 상이 없거나 둘 이상인 경우
    """
    true_vars = {lit for lit in assignment if lit > 0}
    images: Dict[Tuple[int, ...], List[int]] = defaultdict(list)
    beta_table = [FREE] * task.space.total_worlds
    for var, role in formula.roles.items():
        if var not in true_vars:
            continue
        if role.kind is SelectorKind.ALPHA:
            images[role.unit].append(role.value)
        elif role.kind is SelectorKind.BETA:
            beta_table[role.unit[0]] = role.value

    alpha_units = {role.unit for role in formula.roles.values() if role.kind is SelectorKind.ALPHA}
    for unit in alpha_units:
        if len(images.get(unit, [])) != 1:
            raise InputDomainError("assignment does not select exactly one image", details={"unit": list(unit)})

    family = task.alpha_family
    if family.is_joint:
        joint = tuple(images[(g,)][0] for g in range(task.space.total_worlds))
        alpha = AlphaMap(task.space, family, joint=joint)
    else:
        tables = tuple(
            tuple(images[(gi, v)][0] for v in range(family.group_cardinality(task.space, gi)))
            for gi in range(len(family.groups))
        )
        alpha = AlphaMap(task.space, family, tables=tables)
    return alpha, BetaMap(task.space, task.label_count, tuple(beta_table))
