"""Two-qubit gate fidelity model and chain heating.

The model is ``F = 1 - gamma*tau - A*(2*nbar + 1)`` with the chain-length
scaling factor ``A = alpha * N / ln(N)``.  F is clamped to [0, 1]; the
scheduler counts clamps so reports can flag runs where the linear model
broke down.  Program fidelity is the product of its two-qubit gate
fidelities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .device import MachineState, PhysicsParams
from .errors import ConfigError


@dataclass(frozen=True)
class ChainEnergy:
    nbar: float
    n_ions: int

    def __post_init__(self):
        if self.nbar < 0:
            raise ConfigError("nbar must be >= 0")
        if self.n_ions < 1:
            raise ConfigError("chain must hold at least one ion")


def scale_factor(n_ions: int, alpha: float) -> float:
    """A = alpha * N / ln(N). Requires N >= 2 (a 2-qubit gate needs two ions)."""
    if n_ions < 2:
        raise ConfigError(f"scale factor needs a chain of >= 2 ions, got {n_ions}")
    return alpha * n_ions / math.log(n_ions)


def raw_gate_fidelity(pp: PhysicsParams, chain: ChainEnergy) -> float:
    """Unclamped model value; may leave [0, 1] for hot or long chains."""
    a = scale_factor(chain.n_ions, pp.alpha)
    return 1.0 - pp.gamma * pp.tau_2q - a * (2.0 * chain.nbar + 1.0)


def gate_fidelity(pp: PhysicsParams, chain: ChainEnergy) -> float:
    """Model fidelity clamped to [0, 1]."""
    return min(1.0, max(0.0, raw_gate_fidelity(pp, chain)))


def program_fidelity(fids: Iterable[float]) -> float:
    """Product of per-gate fidelities; 1.0 for the empty product."""
    out = 1.0
    for f in fids:
        out *= f
    return out


def apply_heating(state: MachineState, event, pp: PhysicsParams) -> MachineState:
    """Deposit motional quanta for a Merge or Swap event (mutates `state`).

    Merge heats the destination chain by `dnbar_shuttle`; Swap heats the
    chain it happens in by `dnbar_swap`; Split heats the source chain by
    `dnbar_split`.  Other events leave energies unchanged.
    """
    from .scheduler import EventKind  # local import to avoid a cycle

    if event.kind is EventKind.MERGE:
        state.add_nbar(event.dst_trap, pp.dnbar_shuttle)
    elif event.kind is EventKind.SWAP:
        state.add_nbar(event.src_trap, pp.dnbar_swap)
    elif event.kind is EventKind.SPLIT:
        state.add_nbar(event.src_trap, pp.dnbar_split)
    return state
