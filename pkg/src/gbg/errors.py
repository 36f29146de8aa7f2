"""Exception types shared by every module, plus the enumeration cap."""

import os

DEFAULT_ENUM_CAP = 1_000_000


class GbgError(Exception):
    """Base class for library errors."""


class InvalidInputError(GbgError, ValueError):
    """Input violates a precondition (bad graph, bad parameter, bad file)."""


class UnsupportedError(GbgError):
    """The request is well-formed but outside what the library handles."""


class EnumerationCapExceeded(UnsupportedError):
    """An exhaustive search hit its hard cap before finishing."""


def enumeration_cap(default: int = DEFAULT_ENUM_CAP) -> int:
    """Return the active cap, honouring the ``GBG_ENUM_CAP`` environment variable."""
    raw = os.environ.get("GBG_ENUM_CAP")
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"GBG_ENUM_CAP must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InvalidInputError("GBG_ENUM_CAP must be positive")
    return value
