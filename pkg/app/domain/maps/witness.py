"""
Intended semantics 증인 (π, ψ)

규약: perm[i] = π(i) 는 ground-truth factor i가 놓이는 예측 위치이고,
psi[j] 는 위치 j에 도착한 값에 적용되는 전단사입니다.
T(g)[π(i)] = psi[π(i)][g_i]
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import InputDomainError
from app.domain.maps.alpha import AlphaMap
from app.domain.maps.beta import FREE, BetaMap
from app.domain.task.space import ConceptSpace, World
from app.domain.task.task_spec import TaskSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntendedWitness:
    """개념 순열 π + 값 전단사 ψ"""

    perm: Tuple[int, ...]
    psi: Tuple[Tuple[int, ...], ...]

    @classmethod
    def identity(cls, space: ConceptSpace) -> "IntendedWitness":
        return cls(tuple(range(space.k)), tuple(tuple(range(c)) for c in space.cardinalities))

    def validate(self, space: ConceptSpace) -> "IntendedWitness":
        cards = space.cardinalities
        if len(self.perm) != space.k or sorted(self.perm) != list(range(space.k)):
            raise InputDomainError("π가 [k]의 순열이 아닙니다", details={"perm": list(self.perm)})
        for i, j in enumerate(self.perm):
            if cards[i] != cards[j]:
                raise InputDomainError(
                    "cardinality mismatch: π가 카디널리티를 보존하지 않습니다",
                    details={"factor": i, "position": j},
                )
        if len(self.psi) != space.k:
            raise InputDomainError("ψ의 길이가 k와 다릅니다")
        for j, psi_j in enumerate(self.psi):
            if sorted(psi_j) != list(range(cards[j])):
                raise InputDomainError(
                    "ψ가 전단사가 아닙니다", details={"position": j, "psi": list(psi_j)}
                )
        return self

    @property
    def is_identity(self) -> bool:
        return self.perm == tuple(range(len(self.perm))) and all(
            p == tuple(range(len(p))) for p in self.psi
        )

    def transform(self, g: Sequence[int]) -> World:
        """(ψ ∘ P_π)(g)"""
        out = [0] * len(self.perm)
        for i, v in enumerate(g):
            j = self.perm[i]
            out[j] = self.psi[j][v]
        return tuple(out)

    def inverse_transform(self, c: Sequence[int]) -> World:
        return invert_witness(self).transform(c)

    def cell_table(self, space: ConceptSpace) -> np.ndarray:
        """모든 world의 T(g) cell 인덱스 (world 인덱스 순)"""
        worlds = np.indices(space.cardinalities).reshape(space.k, -1)
        images = np.empty_like(worlds)
        for i in range(space.k):
            j = self.perm[i]
            images[j] = np.asarray(self.psi[j])[worlds[i]]
        return np.ravel_multi_index(tuple(images), space.cardinalities)

    def as_alpha(self, space: ConceptSpace) -> AlphaMap:
        return AlphaMap.from_joint(space, [int(c) for c in self.cell_table(space)])

    def canonical(self) -> dict:
        return {"pi": list(self.perm), "psi": [list(p) for p in self.psi]}


def _check_compatible(w1: IntendedWitness, w2: IntendedWitness) -> None:
    if len(w1.perm) != len(w2.perm) or [len(p) for p in w1.psi] != [len(p) for p in w2.psi]:
        raise InputDomainError("cardinality mismatch: 증인의 개념 공간이 다릅니다")


def compose_witness(w1: IntendedWitness, w2: IntendedWitness) -> IntendedWitness:
    """
    T_{w1} ∘ T_{w2} 에 해당하는 증인 (w2를 먼저 적용)

    π = π1 ∘ π2, 위치 p에서 ψ_p = ψ1_p ∘ ψ2_{π1^{-1}(p)}
    """
    _check_compatible(w1, w2)
    k = len(w1.perm)
    perm = tuple(w1.perm[w2.perm[i]] for i in range(k))
    inv1 = [0] * k
    for i, j in enumerate(w1.perm):
        inv1[j] = i
    psi = []
    for p in range(k):
        inner = w2.psi[inv1[p]]
        outer = w1.psi[p]
        psi.append(tuple(outer[inner[v]] for v in range(len(inner))))
    return IntendedWitness(perm, tuple(psi))


def invert_witness(w: IntendedWitness) -> IntendedWitness:
    """T_w^{-1} 에 해당하는 증인: π' = π^{-1}, ψ'_i = ψ_{π(i)}^{-1}"""
    k = len(w.perm)
    perm = [0] * k
    for i, j in enumerate(w.perm):
        perm[j] = i
    psi = []
    for i in range(k):
        src = w.psi[w.perm[i]]
        inv = [0] * len(src)
        for v, image in enumerate(src):
            inv[image] = v
        psi.append(tuple(inv))
    return IntendedWitness(tuple(perm), tuple(psi))


def cardinality_preserving_perms(
    space: ConceptSpace, fix_singletons: bool = False
) -> Iterator[Tuple[int, ...]]:
    """
    카디널리티를 보존하는 [k]의 순열

    fix_singletons=True 이면 카디널리티 1인 factor는 고정합니다
    (그들끼리의 순열은 같은 맵을 만들기 때문).
    """
    cards = space.cardinalities
    classes: List[List[int]] = []
    for card in sorted(set(cards)):
        members = [i for i, c in enumerate(cards) if c == card]
        classes.append(members)
    choices = []
    for members in classes:
        if fix_singletons and cards[members[0]] == 1:
            choices.append([tuple(members)])
        else:
            choices.append(list(itertools.permutations(members)))
    for combo in itertools.product(*choices):
        perm = [0] * space.k
        for members, images in zip(classes, combo):
            for i, j in zip(members, images):
                perm[i] = j
        yield tuple(perm)


def check_intended(alpha: AlphaMap, beta: BetaMap, task: TaskSpec) -> Optional[IntendedWitness]:
    """
    (α, β)가 intended semantics를 가지면 증인 (π, ψ)를 반환

    α는 내부적으로 joint 형태로 확장되며, β는 forced 셀에서만 비교합니다.

    Raises:
        InputDomainError: k가 PERMUTATION_MAX_FACTORS를 넘는 경우
    """
    space = task.space
    if space.k > settings.PERMUTATION_MAX_FACTORS:
        raise InputDomainError(
            f"k={space.k} 는 순열 탐색 한도를 넘습니다",
            details={"limit": settings.PERMUTATION_MAX_FACTORS},
        )
    cells = np.asarray(alpha.joint_table())
    images = np.stack(np.unravel_index(cells, space.cardinalities))
    strides = [int(np.prod(space.cardinalities[i + 1:], dtype=np.int64)) for i in range(space.k)]
    knowledge = task.knowledge.labels
    forced = [c for c, v in enumerate(beta.table) if v != FREE]

    for perm in cardinality_preserving_perms(space):
        psi = []
        for i in range(space.k):
            j = perm[i]
            # 다른 성분이 0인 world에서 ψ_j 복원
            psi_j = tuple(int(images[j, v * strides[i]]) for v in range(space.cardinalities[i]))
            if len(set(psi_j)) != len(psi_j):
                psi = None
                break
            psi.append((j, psi_j))
        if psi is None:
            continue
        ordered = [None] * space.k
        for j, psi_j in psi:
            ordered[j] = psi_j
        witness = IntendedWitness(perm, tuple(ordered))
        expected = witness.cell_table(space)
        if not np.array_equal(expected, cells):
            continue
        inverse = invert_witness(witness).cell_table(space)
        if all(beta.table[c] == knowledge[inverse[c]] for c in forced):
            return witness
    return None
