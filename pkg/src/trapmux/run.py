"""Convenience wrappers tying mapping and compilation together."""

from __future__ import annotations

from typing import Sequence

from .circuit import Program
from .device import DeviceConfig
from .mapper import Policy, RandomScope, place_multi
from .scheduler import Schedule, compile_programs


def compile_corun(programs: Sequence[Program], cfg: DeviceConfig,
                  policy: Policy = "greedy", seed: int | None = None,
                  random_scope: RandomScope = "segment") -> Schedule:
    """Place programs (greedy or seeded-random) and compile them together."""
    state = place_multi(programs, policy, cfg, seed=seed, random_scope=random_scope)
    return compile_programs(programs, state, cfg)


def compile_solo(p: Program, cfg: DeviceConfig) -> Schedule:
    """Compile a single program alone on the device with greedy mapping."""
    return compile_corun([p], cfg)
