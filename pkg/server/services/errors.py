"""
Domain errors
라우트 레이어에서 HTTPException으로, CLI에서 종료 코드로 변환됩니다
"""

from typing import Optional


class NomaError(Exception):
    """Base class for every error raised by the analysis services"""


class ScenarioError(NomaError, ValueError):
    """A scenario / model field violates its invariant"""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ConfigError(NomaError, ValueError):
    """Bad config key, value or file"""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class DomainError(NomaError, ValueError):
    """Special function evaluated outside its domain"""


class QuadratureError(NomaError, ArithmeticError):
    """Quadrature did not reach the requested tolerance"""

    def __init__(self, message: str, error_estimate: Optional[float] = None):
        self.error_estimate = error_estimate
        super().__init__(message)


class UndefinedError(NomaError, ArithmeticError):
    """Metric undefined for the given reference value"""


class SupportMismatchError(NomaError, ValueError):
    """Histogram and analytic curve do not share a support"""


class UnknownTargetError(NomaError, KeyError):
    """Unknown reproduction target"""

    def __init__(self, target: str):
        self.target = target
        super().__init__(target)

    def __str__(self) -> str:
        return f"unknown reproduction target: {self.target}"
