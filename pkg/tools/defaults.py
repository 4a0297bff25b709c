"""Lazy access to Settings for library defaults.

The numerical packages never require an environment: when Settings cannot
be loaded the module-level fallback is used.
"""

from __future__ import annotations

import logging
from typing import Any

logger = logging.getLogger(__name__)


def setting(name: str, fallback: Any) -> Any:
    """Return ``get_settings().<name>``, or ``fallback`` if settings are unavailable."""
    try:
        from cli.config import get_settings

        return getattr(get_settings(), name)
    except Exception as e:
        logger.debug("Settings unavailable for %s, using fallback %r: %s", name, fallback, e)
        return fallback


def resolve(value: Any, name: str, fallback: Any) -> Any:
    """``value`` if given, else the configured setting."""
    return value if value is not None else setting(name, fallback)
