__all__ = ["__version__"]

from importlib.metadata import PackageNotFoundError, version

import structlog

from .report import configure_logging

__version__: str
"""The package version string (PEP 440 / SemVer compatible)."""

try:
    __version__ = version(__name__)
except PackageNotFoundError:
    # package is not installed
    __version__ = "0.0.0"

# Library callers get warnings on stderr until they configure structlog.
if not structlog.is_configured():
    configure_logging("WARNING")
