"""Input validation utilities and the shared exception base."""

from sympy import factorint


class ParahoricError(Exception):
    """Base class for every error raised by the calculators."""

    pass


class ValidationError(ParahoricError):
    """Validation error exception."""

    pass


class RangeError(ValidationError):
    """A numeric argument lies outside its supported range."""

    pass


class ArgumentError(ValidationError):
    """Arguments are individually valid but incompatible with each other."""

    pass


def is_prime_power(q: int) -> bool:
    """Check whether q is a positive power of a single prime."""
    if q < 2:
        return False
    return len(factorint(q)) == 1


def is_squarefree(n: int) -> bool:
    """Check whether n is a squarefree positive integer."""
    if n < 1:
        return False
    return all(e == 1 for e in factorint(n).values())


def require_range(name: str, value: int, low: int, high: int | None = None) -> int:
    """Raise RangeError unless low <= value (<= high)."""
    if value < low or (high is not None and value > high):
        bound = f"[{low}, {high}]" if high is not None else f">= {low}"
        raise RangeError(f"{name}={value} outside supported range {bound}")
    return value


def require_prime_power(q: int) -> int:
    if not is_prime_power(q):
        raise RangeError(f"q={q} is not a prime power")
    return q


def require_squarefree(name: str, n: int) -> int:
    if not is_squarefree(n):
        raise ArgumentError(f"{name}={n} is not a squarefree positive integer")
    return n

