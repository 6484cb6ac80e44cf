"""Identifier checks and file-name sanitisation."""

from .errors import StructureError


def is_identifier(token: str) -> bool:
    """True for a non-empty token without whitespace that does not open a comment."""
    return bool(token) and not token.startswith("#") and not any(c.isspace() for c in token)


def validate_identifier(token: str, what: str = "identifier") -> str:
    """Return ``token`` unchanged, or raise StructureError if it cannot be written to bgf."""
    if not is_identifier(token):
        raise StructureError(f"Invalid {what} {token!r}")
    return token


def sanitize_filename(name: str) -> str:
    """Sanitize a graph or suite name for safe use in filesystem paths.

    Keeps only alphanumeric characters plus ``-`` and ``_``.
    All other characters are replaced with ``_``.
    """
    return "".join(c if c.isalnum() or c in "-_" else "_" for c in name)
