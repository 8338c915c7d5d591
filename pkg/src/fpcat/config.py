"""Process-wide limits and debug switches."""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    max_ring_size: int = 64
    max_module_size: int = 4096
    debug_extensional: bool = False
    dl_max_summands: int = 3


_current = Settings()


def settings():
    return _current


@contextlib.contextmanager
def configure(**changes):
    """Temporarily override settings, e.g. ``with configure(max_module_size=256): ...``."""
    global _current
    saved = _current
    _current = replace(_current, **changes)
    try:
        yield _current
    finally:
        _current = saved
