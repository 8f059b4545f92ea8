"""Resource caps shared by every exhaustive routine.

Each cap can be overridden through an environment variable of the form
``MCLD_<NAME>`` (for example ``MCLD_MAX_CLASS_SIZE=5000``).  Exceeding a cap
raises :class:`CapExceeded`; nothing is ever silently truncated.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


class CapExceeded(RuntimeError):
    """Raised when an exhaustive computation would exceed a resource cap."""

    def __init__(self, cap: str, value, limit):
        super().__init__(f"{cap}: {value} exceeds cap {limit}")
        self.cap = cap
        self.value = value
        self.limit = limit


@dataclass(frozen=True)
class Caps:
    max_class_size: int = 4096
    max_psi_b_maps: int = 3 ** 7
    max_uniform_family: int = 16
    max_nodes: int = 5_000_000
    max_cover_depth: int = 6
    max_min_cover_requirements: int = 100_000
    max_adversary_states: int = 2_000_000
    max_enumeration: int = 200_000
    max_game_iterations: int = 1_000_000

    def check(self, name: str, value) -> None:
        limit = getattr(self, name)
        if value > limit:
            raise CapExceeded(name, value, limit)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _from_env() -> Caps:
    overrides = {}
    for f in fields(Caps):
        raw = os.environ.get("MCLD_" + f.name.upper())
        if raw is not None:
            overrides[f.name] = int(raw)
    return replace(Caps(), **overrides)


DEFAULT_CAPS = _from_env()
