"""Wall-crossing forms F_{1-k,D} for positive discriminants."""

from ._core import *  # noqa: F401,F403
from ._core import BudgetInfeasible, DomainError, EvalParams, QForm, WallCollision  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
