"""Device configuration and machine state.

The device is a linear chain of traps connected by shuttle paths between
neighbours.  Each trap holds one ordered ion chain.  Chain lists are ordered
head -> tail where a trap's *tail* faces the next trap (higher index) and its
*head* faces the previous one, so for the 2-trap devices exercised in tests
trap 0's shuttle-path end is its tail and trap 1's is its head.

Excess capacity (EC) of a trap is
``trap_capacity + comm_capacity - ions currently in the trap``; initial
placement may only use `trap_capacity` slots, the communication slots are
reserved for shuttled-in ions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Iterable, NamedTuple

from .errors import CapacityError, ConfigError, UnknownIonError


@dataclass(frozen=True)
class PhysicsParams:
    """Knobs of the two-qubit gate fidelity model and chain heating.

    Defaults are placeholders for experimentation, not calibrated hardware
    values; analysis built on them must only rely on relative comparisons.
    """

    gamma: float = 1.0          # trap heating rate (1/time)
    tau_2q: float = 1e-3        # two-qubit gate time
    alpha: float = 1e-2         # calibration constant in A = alpha * N / ln(N)
    dnbar_shuttle: float = 0.1  # motional quanta added to the destination chain per merge
    dnbar_swap: float = 0.0     # quanta added to a chain per intra-trap swap
    dnbar_split: float = 0.0    # quanta added to the source chain per split
    nbar_initial: float = 0.0   # starting motional mode of every chain

    def __post_init__(self):
        for name in ("gamma", "tau_2q", "alpha", "dnbar_shuttle",
                     "dnbar_swap", "dnbar_split", "nbar_initial"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if self.tau_2q <= 0:
            raise ConfigError("tau_2q must be > 0")


@dataclass(frozen=True)
class DeviceConfig:
    n_traps: int = 2
    trap_capacity: int = 15
    comm_capacity: int = 2
    physics: PhysicsParams = field(default_factory=PhysicsParams)

    def __post_init__(self):
        if self.n_traps < 1:
            raise ConfigError("n_traps must be >= 1")
        if self.trap_capacity < 1:
            raise ConfigError("trap_capacity must be >= 1")
        if self.comm_capacity < 0:
            raise ConfigError("comm_capacity must be >= 0")

    @property
    def max_chain(self) -> int:
        return self.trap_capacity + self.comm_capacity

    @property
    def total_capacity(self) -> int:
        """Slots usable by initial placement (comm slots excluded)."""
        return self.n_traps * self.trap_capacity

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "DeviceConfig":
        data = dict(data)
        physics = data.pop("physics", None)
        try:
            pp = PhysicsParams(**physics) if physics else PhysicsParams()
            return cls(physics=pp, **data)
        except TypeError as exc:
            raise ConfigError(f"bad device config: {exc}") from exc

    @classmethod
    def from_json(cls, path: str | Path) -> "DeviceConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")


class IonId(NamedTuple):
    """An ion is identified by its owning tenant and logical qubit index."""

    tenant: str
    qubit: int

    def label(self) -> str:
        return f"{self.tenant}.q{self.qubit}"


class MachineState:
    """Per-trap ordered ion chains plus per-chain motional mode.

    Mutated only by a single scheduler run; `clone()` is cheap and used for
    what-if compilations.
    """

    def __init__(self, cfg: DeviceConfig,
                 chains: Iterable[Iterable[IonId]] | None = None):
        self.cfg = cfg
        self.chains: list[list[IonId]] = [list(c) for c in chains] if chains \
            else [[] for _ in range(cfg.n_traps)]
        if len(self.chains) != cfg.n_traps:
            raise ConfigError("one chain per trap required")
        self.nbar: list[float] = [cfg.physics.nbar_initial] * cfg.n_traps
        self._index: dict[IonId, tuple[int, int]] = {}
        self._reindex()
        for t, chain in enumerate(self.chains):
            if len(chain) > cfg.max_chain:
                raise CapacityError(
                    f"trap {t} holds {len(chain)} ions, max {cfg.max_chain}")

    def _reindex(self) -> None:
        self._index.clear()
        for t, chain in enumerate(self.chains):
            for pos, ion in enumerate(chain):
                if ion in self._index:
                    raise ConfigError(f"ion {ion.label()} appears twice")
                self._index[ion] = (t, pos)

    def clone(self) -> "MachineState":
        dup = MachineState.__new__(MachineState)
        dup.cfg = self.cfg
        dup.chains = [list(c) for c in self.chains]
        dup.nbar = list(self.nbar)
        dup._index = dict(self._index)
        return dup

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MachineState)
                and self.chains == other.chains and self.nbar == other.nbar)

    @property
    def n_ions(self) -> int:
        return sum(len(c) for c in self.chains)

    def ions(self) -> list[IonId]:
        return [ion for chain in self.chains for ion in chain]

    def locate(self, tenant: str, qubit: int) -> tuple[int, int]:
        """(trap, position) of an ion; raises UnknownIonError when absent."""
        try:
            return self._index[IonId(tenant, qubit)]
        except KeyError:
            raise UnknownIonError(f"ion {tenant}.q{qubit} is not on the machine") from None

    def trap_of(self, ion: IonId) -> int:
        try:
            return self._index[ion][0]
        except KeyError:
            raise UnknownIonError(f"ion {ion.label()} is not on the machine") from None

    def excess_capacity(self, trap: int) -> int:
        if not 0 <= trap < self.cfg.n_traps:
            raise UnknownIonError(f"no trap {trap}")
        return self.cfg.max_chain - len(self.chains[trap])

    # -- mutations (used by the scheduler and by event replay) ----------

    def path_end(self, trap: int, toward: int) -> int:
        """Chain position adjacent to the shuttle path toward trap `toward`."""
        if abs(toward - trap) != 1:
            raise ConfigError(f"traps {trap} and {toward} are not neighbours")
        return len(self.chains[trap]) - 1 if toward > trap else 0

    def swap_with_next(self, trap: int, pos: int) -> None:
        """Swap the ions at `pos` and `pos + 1` of a chain."""
        chain = self.chains[trap]
        if not 0 <= pos < len(chain) - 1:
            raise UnknownIonError(f"no adjacent pair at trap {trap} pos {pos}")
        chain[pos], chain[pos + 1] = chain[pos + 1], chain[pos]
        self._index[chain[pos]] = (trap, pos)
        self._index[chain[pos + 1]] = (trap, pos + 1)

    def remove_ion(self, ion: IonId) -> None:
        trap, pos = self._index.pop(ion)
        chain = self.chains[trap]
        del chain[pos]
        for p in range(pos, len(chain)):
            self._index[chain[p]] = (trap, p)

    def insert_ion(self, ion: IonId, trap: int, at_head: bool) -> None:
        if ion in self._index:
            raise ConfigError(f"ion {ion.label()} already placed")
        chain = self.chains[trap]
        if len(chain) >= self.cfg.max_chain:
            raise CapacityError(f"trap {trap} is at its absolute maximum")
        if at_head:
            chain.insert(0, ion)
            for p, other in enumerate(chain):
                self._index[other] = (trap, p)
        else:
            chain.append(ion)
            self._index[ion] = (trap, len(chain) - 1)

    def add_nbar(self, trap: int, amount: float) -> None:
        self.nbar[trap] += amount

    def layout(self) -> list[list[str]]:
        """Chains as ion labels, for reports and golden tests."""
        return [[ion.label() for ion in chain] for chain in self.chains]


def excess_capacity(state: MachineState, trap: int, cfg: DeviceConfig) -> int:
    """EC of a trap: trap_capacity + comm_capacity - ions in the trap."""
    if not 0 <= trap < cfg.n_traps:
        raise UnknownIonError(f"no trap {trap}")
    return cfg.max_chain - len(state.chains[trap])


def locate(state: MachineState, tenant: str, qubit: int) -> tuple[int, int]:
    return state.locate(tenant, qubit)
