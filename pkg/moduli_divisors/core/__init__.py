"""Core data model: contexts, the Picard group basis and configuration."""

from .config import DEFAULT_CONFIG, AppConfig
from .picard_basis import BasisSymbol, DivisorClass, canonicalize, combine, orbit_basis
from .state import Level, Mode, SpaceContext, SpaceKind, TableName, Verdict
from .workflow import build_workflow, run_workflow

__all__ = [
    "AppConfig",
    "DEFAULT_CONFIG",
    "BasisSymbol",
    "DivisorClass",
    "canonicalize",
    "combine",
    "orbit_basis",
    "Level",
    "Mode",
    "SpaceContext",
    "SpaceKind",
    "TableName",
    "Verdict",
    "build_workflow",
    "run_workflow",
]
