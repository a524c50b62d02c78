"""
Exception hierarchy for the syndrome decoder library
"""

from typing import Optional


class DecoderError(Exception):
    """Base class for all library errors"""


class ContractViolation(DecoderError, ValueError):
    """Raised when a caller breaks an operation's precondition (shapes, permutations, grids)"""


class CodeValidationError(DecoderError):
    """Raised when a CSS code or code manifest fails validation"""


class AlistParseError(DecoderError):
    """Raised for malformed alist files, with the offending line number"""

    def __init__(self, message: str, line_number: Optional[int] = None, path: Optional[str] = None):
        self.line_number = line_number
        self.path = path
        location = ""
        if path is not None:
            location += f"{path}"
        if line_number is not None:
            location += f":{line_number}" if location else f"line {line_number}"
        super().__init__(f"{location}: {message}" if location else message)


class ConsistencyError(DecoderError):
    """Raised when a converged decoder output does not reproduce the measured syndrome"""


class NumericalError(DecoderError):
    """Raised by a strict instrument when a message or bias is NaN or infinite"""
