# mastergraph/exceptions.py
from typing import Optional


class MasterGraphError(Exception):
    """Базовая ошибка пакета"""
    exit_code: int = 3
    status_code: int = 500


# --- Ошибки входных данных (exit 2) ---

class InputValidationError(MasterGraphError, ValueError):
    exit_code = 2
    status_code = 400


class LineError(InputValidationError):
    """Ошибка, привязанная к строке входного файла"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLine(LineError):
    pass


class DuplicateEdge(LineError):
    pass


class SelfLoop(LineError):
    pass


class NonPositiveRate(LineError):
    pass


class IndexOutOfRange(InputValidationError, IndexError):
    pass


class EmptySet(InputValidationError):
    pass


class NonSquare(InputValidationError):
    pass


class StaleCondensation(InputValidationError):
    pass


class NoTransientStates(InputValidationError):
    pass


class NotStronglyConnected(InputValidationError):
    pass


class NegativeTime(InputValidationError):
    pass


class InvalidDistribution(InputValidationError):
    pass


# --- Внутренние численные расхождения (exit 3) ---

class ConsistencyError(MasterGraphError):
    exit_code = 3
    status_code = 500


class NumericMismatch(ConsistencyError):
    pass


class SingularTransientBlock(ConsistencyError):
    pass


class TruncationError(ConsistencyError):
    pass


# --- Превышение лимитов (exit 4) ---

class TooLarge(MasterGraphError):
    exit_code = 4
    status_code = 413
