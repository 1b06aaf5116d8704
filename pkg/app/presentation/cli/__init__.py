"""
rscount 명령줄 인터페이스
"""

from app.presentation.cli.commands import COMMANDS, run
from app.presentation.cli.parser import build_parser

__all__ = ["COMMANDS", "build_parser", "run"]
