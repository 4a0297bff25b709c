"""Command line and settings for netflux.

- config: Settings (NETFLUX_* environment), get_settings
- main: argparse entry point ``netflux``
"""

from cli.config import Settings, get_settings

__all__ = ["Settings", "get_settings"]
