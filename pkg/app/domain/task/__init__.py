"""
태스크 모델 (개념 공간, 지식, support, α 패밀리)
"""

from app.domain.task.builder import build_task, parse_document
from app.domain.task.family import AlphaFamily, FamilyKind
from app.domain.task.knowledge import BuiltinKnowledge, KnowledgeTable, builtin_knowledge
from app.domain.task.space import ConceptSpace, Factor, World
from app.domain.task.support import SupportMode, SupportSet
from app.domain.task.task_spec import AuxiliaryHead, TaskSpec, enumerate_support

__all__ = [
    "AlphaFamily",
    "AuxiliaryHead",
    "BuiltinKnowledge",
    "ConceptSpace",
    "Factor",
    "FamilyKind",
    "KnowledgeTable",
    "SupportMode",
    "SupportSet",
    "TaskSpec",
    "World",
    "build_task",
    "builtin_knowledge",
    "enumerate_support",
    "parse_document",
]
