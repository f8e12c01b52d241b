"""Small input-validation helpers shared across modules."""
from __future__ import annotations

import math
import numbers

__all__ = [
    "check_real",
    "check_open_unit",
    "check_positive",
    "check_half_open_unit",
    "check_at_least",
    "check_choice",
]


def check_real(name: str, value: object) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def check_open_unit(name: str, value: object) -> float:
    value = check_real(name, value)
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must satisfy 0 < {name} < 1, got {value}")
    return value


def check_positive(name: str, value: object) -> float:
    value = check_real(name, value)
    if value <= 0.0:
        raise ValueError(f"{name} must satisfy {name} > 0, got {value}")
    return value


def check_half_open_unit(name: str, value: object) -> float:
    """(0, 1] interval."""
    value = check_real(name, value)
    if not 0.0 < value <= 1.0:
        raise ValueError(f"{name} must satisfy 0 < {name} <= 1, got {value}")
    return value


def check_at_least(name: str, value: object, minimum: float) -> float:
    value = check_real(name, value)
    if value < minimum:
        raise ValueError(f"{name} must satisfy {name} >= {minimum}, got {value}")
    return value


def check_choice(name: str, value: object, choices: tuple[str, ...]) -> str:
    if value not in choices:
        raise ValueError(f"unknown {name} {value!r}; expected one of {choices}")
    return value  # type: ignore[return-value]
