"""
Decorators for checker registration and crossing limits
"""
from functools import wraps
from typing import Callable, Optional

from .config import get_settings
from .exceptions import CrossingLimitError


def checker(name: Optional[str] = None, description: Optional[str] = None):
    """
    Decorator to mark a function as a verification checker

    Usage:
        @checker("thm23", "Rank bound by single-circle states")
        def check_theorem_2_3(diagram: PlanarDiagram) -> CheckReport:
            # Implementation
    """
    def decorator(func: Callable) -> Callable:
        checker_name = name or func.__name__

        @wraps(func)
        def wrapper(*args, **kwargs):
            return func(*args, **kwargs)

        wrapper._is_checker = True
        wrapper._checker_name = checker_name
        wrapper._checker_description = description or func.__doc__ or f"Checker: {checker_name}"

        return wrapper
    return decorator


def crossing_guard(operation: Optional[str] = None):
    """
    Decorator for exponential operations whose first argument is a diagram

    Raises CrossingLimitError when the diagram has more crossings than
    KHOMA_MAX_CROSSINGS allows.
    """
    def decorator(func: Callable) -> Callable:
        label = operation or func.__name__

        @wraps(func)
        def wrapper(diagram, *args, **kwargs):
            limit = get_settings().max_crossings
            n = len(diagram.crossings)
            if n > limit:
                raise CrossingLimitError(label, n, limit)
            return func(diagram, *args, **kwargs)

        wrapper._guarded_operation = label
        return wrapper
    return decorator
