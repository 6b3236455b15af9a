#!/usr/bin/env python3
"""
Error types for the fink toolkit.

Every error carries a standardized ``error_code`` and the process
``exit_code`` the CLI reports for it.
"""

from typing import Any, Dict, Optional


class FinkError(Exception):
    """
    Base class for all domain errors raised by the toolkit.
    """
    error_code = "FINK_ERROR"
    exit_code = 4

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_json(self) -> Dict[str, Any]:
        payload = {"error": self.error_code, "message": self.message}
        if self.details:
            payload["details"] = self.details
        return payload


class UsageError(FinkError):
    error_code = "USAGE"
    exit_code = 2


class AmbientMismatchError(FinkError, ValueError):
    error_code = "AMBIENT_MISMATCH"


class UndefinedOnZeroError(FinkError, ValueError):
    error_code = "UNDEFINED_ON_ZERO"


class BlockOrderError(FinkError, ValueError):
    error_code = "BLOCK_ORDER"


class NotInSubspaceError(FinkError, ValueError):
    error_code = "NOT_IN_SUBSPACE"


class GeneratorShortageError(FinkError, ValueError):
    """
    Raised when a construction needs more generators than supplied.
    """
    error_code = "GENERATOR_SHORTAGE"

    def __init__(self, message: str, required: int, available: int):
        super().__init__(message, {"required": required, "available": available})
        self.required = required
        self.available = available


class ArityError(FinkError, ValueError):
    error_code = "ARITY"


class OracleDomainError(FinkError, KeyError):
    """
    Raised when a relation oracle is queried outside its domain.
    """
    error_code = "ORACLE_DOMAIN"

    def __init__(self, message: str, vector: Any = None):
        super().__init__(message, {"vector": vector} if vector is not None else None)
        self.vector = vector

    def __str__(self) -> str:
        return self.message


class NotFoundError(FinkError):
    """
    Raised when a search ends without a match.

    Attributes:
        stats: Search statistics (candidates tried, subspace sizes)
    """
    error_code = "NOT_FOUND"
    exit_code = 3

    def __init__(self, message: str, stats: Optional[Dict[str, Any]] = None):
        super().__init__(message, stats)
        self.stats = stats or {}


class BudgetExhaustedError(NotFoundError):
    error_code = "BUDGET_EXHAUSTED"


class GridError(FinkError, ValueError):
    error_code = "GRID"

    def __init__(self, message: str, index: int):
        super().__init__(message, {"index": index})
        self.index = index


class NetDomainError(FinkError, ValueError):
    error_code = "NET_DOMAIN"


class DegenerateInputError(FinkError, ValueError):
    error_code = "DEGENERATE_INPUT"
