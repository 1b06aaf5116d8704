"""
결정적 맵 (α, β), 최적성, intended semantics
"""

from app.domain.maps.alpha import AlphaMap, apply_alpha
from app.domain.maps.beta import FREE, BetaMap
from app.domain.maps.intended import (
    Subtrahend,
    SubtrahendFormula,
    SubtrahendPolicy,
    intended_pair_count,
    representable_intended_count,
    rs_intended_count,
    select_subtrahend,
)
from app.domain.maps.optimality import forced_beta, is_optimal_pair, reach
from app.domain.maps.witness import (
    IntendedWitness,
    check_intended,
    compose_witness,
    invert_witness,
)

__all__ = [
    "FREE",
    "AlphaMap",
    "BetaMap",
    "IntendedWitness",
    "Subtrahend",
    "SubtrahendFormula",
    "SubtrahendPolicy",
    "apply_alpha",
    "check_intended",
    "compose_witness",
    "forced_beta",
    "intended_pair_count",
    "invert_witness",
    "is_optimal_pair",
    "reach",
    "representable_intended_count",
    "rs_intended_count",
    "select_subtrahend",
]
