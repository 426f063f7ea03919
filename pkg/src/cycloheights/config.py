"""Process-wide budgets and search caps.

Defaults can be overridden by the ``CYCLOHEIGHTS_BUFFER_BUDGET`` environment
variable, by a JSON config file (see :func:`load_config`), or per call.
"""

from __future__ import annotations

import json
import os
from contextlib import contextmanager
from dataclasses import asdict, dataclass, fields, replace

from .errors import DomainError

DEFAULT_BUFFER_BUDGET = 20_000_000
ENV_BUDGET = "CYCLOHEIGHTS_BUFFER_BUDGET"


@dataclass(frozen=True)
class Config:
    buffer_budget: int = DEFAULT_BUFFER_BUDGET
    ap_cap: int = 2**40
    sieve_limit: int = 10**9
    stream_block: int = 1 << 20

    def as_dict(self):
        return asdict(self)


def _from_env() -> Config:
    cfg = Config()
    raw = os.environ.get(ENV_BUDGET)
    if raw:
        cfg = replace(cfg, buffer_budget=int(raw))
    return cfg


_current = _from_env()


def get_config() -> Config:
    return _current


def set_config(**changes) -> Config:
    global _current
    _current = replace(_current, **changes)
    return _current


@contextmanager
def override(**changes):
    """Temporarily change settings, e.g. ``with override(buffer_budget=10**6): ...``."""
    global _current
    saved = _current
    _current = replace(_current, **changes)
    try:
        yield _current
    finally:
        _current = saved


def load_config(path) -> Config:
    """Read budget/cap keys from a JSON object; unknown keys are rejected."""
    with open(path) as fh:
        data = json.load(fh)
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    return set_config(**{k: int(v) for k, v in data.items()})
