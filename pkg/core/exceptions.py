"""Error hierarchy shared by every engine module.

Every error carries a stable ``code`` which the command line reports in its
machine-readable error document.
"""

from typing import Any, Dict, Optional


class CondorcetError(Exception):
    """Base class for all domain errors raised by the engine."""

    code = "CondorcetError"

    def __init__(self, message: str = "", details: Optional[Dict[str, Any]] = None):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "message": self.message, "details": self.details}


class UsageError(CondorcetError):
    code = "UsageError"


# perm
class DuplicateEntry(CondorcetError):
    code = "DuplicateEntry"


class OutOfRange(CondorcetError):
    code = "OutOfRange"


class LetterOutOfRange(CondorcetError):
    code = "LetterOutOfRange"


class NotReduced(CondorcetError):
    code = "NotReduced"


# heap
class SizeExceeded(CondorcetError):
    code = "SizeExceeded"


# majority
class SupportMismatch(CondorcetError):
    code = "SupportMismatch"


class NotDecreasing(CondorcetError):
    code = "NotDecreasing"


class NotIntersectable(CondorcetError):
    code = "NotIntersectable"


class OracleMismatch(CondorcetError):
    code = "OracleMismatch"


# folding
class SearchBudgetExceeded(CondorcetError):
    code = "SearchBudgetExceeded"


class InvalidFold(CondorcetError):
    code = "InvalidFold"


class NotAntiautomorphism(CondorcetError):
    code = "NotAntiautomorphism"


# families
class ParamOutOfRange(CondorcetError):
    code = "ParamOutOfRange"


class NoClosedForm(CondorcetError):
    code = "NoClosedForm"


class ResourceExceeded(CondorcetError):
    code = "ResourceExceeded"


# bruhat
class NotLongestPermutation(CondorcetError):
    code = "NotLongestPermutation"


class BudgetExceeded(CondorcetError):
    code = "BudgetExceeded"

    def __init__(self, message: str = "", details=None, state=None):
        super().__init__(message, details)
        # Partial enumeration state, kept so a checkpoint can resume from it.
        self.state = state
