"""White-box adversarial program generation.

The generated program has three blocks, emitted in the order
``shuttle-controller (SC) + bridging gate + initial-mapping-controller (IMC)``
but generated IMC-first so later blocks can avoid reusing its qubit pairs:

* The IMC block walks a chain over ions 0..cap-1, adding each consecutive
  pair twice.  With every IMC pair at weight 2 and every other pair at
  weight 1, the greedy mapper is forced to put exactly ions 0..cap-1 into
  trap 0, leaving the remaining adversary ions in trap 1 next to the victim.
* The SC block is built against a tracked model of the trap states assuming
  a victim of `assumed_victim_size`.  Each gate pairs an ion with a
  never-used partner from the opposite trap, so when the assumption matches
  the actual victim size every SC gate forces exactly one shuttle.
* The bridging gate joins the last SC gate to the first IMC gate through a
  fresh pair, preserving the dependency chain without raising any edge
  weight above 1.

The trap-state model in this module deliberately reimplements the
scheduler's excess-capacity policy instead of calling into it, so a mismatch
between generator assumptions and compiler behaviour is itself testable.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from ..circuit import Gate, Program, ms
from ..device import DeviceConfig
from ..errors import ConfigError, GenerationError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AttackSpec:
    """Parameters of a systematic adversarial program."""

    trap_capacity: int
    assumed_victim_size: int
    sc_block_length: int
    seed: int
    comm_capacity: int = 2
    adversary_size: int | None = None

    def __post_init__(self):
        if self.trap_capacity < 2:
            raise ConfigError("trap_capacity must be >= 2")
        if self.adversary_size is None:
            object.__setattr__(self, "adversary_size", self.trap_capacity + 3)
        if self.adversary_size <= self.trap_capacity:
            raise ConfigError("adversary must span two traps "
                              "(adversary_size > trap_capacity)")
        if self.adversary_size > 2 * self.trap_capacity:
            raise ConfigError("adversary does not fit two traps")
        if self.assumed_victim_size < 2:
            raise ConfigError("assumed_victim_size must be >= 2")
        spill = self.adversary_size - self.trap_capacity
        if self.assumed_victim_size > self.trap_capacity - spill:
            raise ConfigError(
                f"assumed victim of {self.assumed_victim_size} does not fit "
                f"next to {spill} adversary ions in one trap")
        if self.sc_block_length < 1:
            raise ConfigError("sc_block_length must be >= 1")
        if self.comm_capacity < 0:
            raise ConfigError("comm_capacity must be >= 0")


def build_imc(trap_capacity: int) -> list[Gate]:
    """Chain pattern (0,1)x2, (1,2)x2, ..., (cap-2,cap-1)x2."""
    if trap_capacity < 2:
        raise ConfigError("IMC needs trap_capacity >= 2")
    gates: list[Gate] = []
    for a in range(trap_capacity - 1):
        gates.append(ms(a, a + 1))
        gates.append(ms(a, a + 1))
    return gates


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class _TrapModel:
    """The generator's own model of the two trap states.

    Chains are adversary-ion lists ordered head -> tail; the assumed victim
    occupies the tail of trap 1 and only contributes to ion counts.  Trap 0's
    shuttle-path end is its tail, trap 1's is its head, mirroring the device
    geometry without sharing code with the scheduler.
    """

    def __init__(self, spec: AttackSpec):
        self.max_chain = spec.trap_capacity + spec.comm_capacity
        self.chains: list[list[int]] = [
            list(range(spec.trap_capacity)),
            list(range(spec.trap_capacity, spec.adversary_size)),
        ]
        self.victim_ions = spec.assumed_victim_size

    def trap_of(self, ion: int) -> int:
        return 0 if ion in self.chains[0] else 1

    def adversary_ions(self, trap: int) -> list[int]:
        return self.chains[trap]

    def ec(self, trap: int) -> int:
        ions = len(self.chains[trap]) + (self.victim_ions if trap == 1 else 0)
        return self.max_chain - ions

    def apply_gate(self, ion_a: int, ion_b: int) -> int:
        """Move one gate ion per the excess-capacity policy; returns it."""
        trap_a, trap_b = self.trap_of(ion_a), self.trap_of(ion_b)
        if trap_a == trap_b:
            raise GenerationError("tracked gate ions are co-located")
        if self.ec(trap_a) < self.ec(trap_b):
            mover, src, dst = ion_a, trap_a, trap_b
        elif self.ec(trap_a) > self.ec(trap_b):
            mover, src, dst = ion_b, trap_b, trap_a
        else:
            mover, src, dst = ion_a, trap_a, trap_b
        self.chains[src].remove(mover)
        if dst == 1:
            self.chains[dst].insert(0, mover)
        else:
            self.chains[dst].append(mover)
        return mover


def build_sc(spec: AttackSpec, cfg: DeviceConfig | None = None) -> list[Gate]:
    """Shuttle-controller block; may be shorter than requested on pair
    exhaustion (a diagnostic is logged)."""
    gates, _ = _build_sc(spec, _imc_weights(spec), cfg)
    return gates


def _imc_weights(spec: AttackSpec) -> dict[tuple[int, int], int]:
    weights: dict[tuple[int, int], int] = {}
    for g in build_imc(spec.trap_capacity):
        weights[g.pair] = weights.get(g.pair, 0) + 1
    return weights


def _check_cfg(spec: AttackSpec, cfg: DeviceConfig | None) -> None:
    if cfg is None:
        return
    if cfg.trap_capacity != spec.trap_capacity or cfg.comm_capacity != spec.comm_capacity:
        raise ConfigError(
            "attack spec capacities do not match the device "
            f"(spec {spec.trap_capacity}+{spec.comm_capacity}, "
            f"device {cfg.trap_capacity}+{cfg.comm_capacity})")


def _build_sc(spec: AttackSpec, weights: dict[tuple[int, int], int],
              cfg: DeviceConfig | None = None,
              seed: int | None = None) -> tuple[list[Gate], bool]:
    _check_cfg(spec, cfg)
    model = _TrapModel(spec)
    node: dict[int, int] = {}
    for pair, count in weights.items():
        for q in pair:
            node[q] = node.get(q, 0) + count
    rng = random.Random(spec.seed if seed is None else seed)
    gates: list[Gate] = []
    retry_other = False
    last_moved: int | None = None
    last_other: int | None = None
    exhausted = False

    def partner_for(ion_a: int) -> int | None:
        """First never-used partner in the opposite trap, trying the least
        connected ions first (chain order breaks ties)."""
        opposite = 1 - model.trap_of(ion_a)
        candidates = sorted(model.adversary_ions(opposite),
                            key=lambda i: node.get(i, 0))
        return next((c for c in candidates
                     if weights.get(_pair(ion_a, c), 0) == 0), None)

    def fresh_start() -> tuple[int, int] | None:
        """Restart the chain from the least-connected ion that still has an
        unused cross-trap partner (the walk has no previous gate to extend).

        Ions from the fuller side go first: a restart gate tends to move its
        first ion, and draining the small side would starve the pool of
        cross-trap pairs.
        """
        big = 0 if len(model.chains[0]) >= len(model.chains[1]) else 1
        order = sorted(range(spec.adversary_size),
                       key=lambda i: (model.trap_of(i) != big, node.get(i, 0), i))
        for ion_a in order:
            ion_b = partner_for(ion_a)
            if ion_b is not None:
                return ion_a, ion_b
        return None

    while len(gates) < spec.sc_block_length:
        if last_moved is None:
            ion_a = rng.randrange(spec.adversary_size)
        elif not retry_other:
            ion_a = last_moved
        else:
            ion_a = last_other
        ion_b = partner_for(ion_a)
        if ion_b is None:
            if last_moved is not None and not retry_other:
                retry_other = True
                continue
            # both walk candidates (or the seeded first pick) are out of
            # unused partners: restart from any viable ion before giving up
            restart = fresh_start()
            if restart is None:
                exhausted = True
                break
            ion_a, ion_b = restart
        retry_other = False
        gates.append(ms(ion_a, ion_b))
        weights[_pair(ion_a, ion_b)] = 1
        node[ion_a] = node.get(ion_a, 0) + 1
        node[ion_b] = node.get(ion_b, 0) + 1
        moved = model.apply_gate(ion_a, ion_b)
        last_moved = moved
        last_other = ion_b if moved == ion_a else ion_a

    if exhausted:
        log.warning(
            "SC generation exhausted unused cross-trap pairs after %d of %d "
            "gates (cap %d, assumed victim %d, seed %d)",
            len(gates), spec.sc_block_length, spec.trap_capacity,
            spec.assumed_victim_size, spec.seed)
    return gates, exhausted


def bridging_gate(sc: list[Gate], imc: list[Gate]) -> Gate:
    """Fresh pair joining the last SC gate to the first IMC gate."""
    if not sc or not imc:
        raise GenerationError("bridging needs non-empty SC and IMC blocks")
    weights: dict[tuple[int, int], int] = {}
    for g in [*sc, *imc]:
        weights[g.pair] = weights.get(g.pair, 0) + 1
    sc_a, sc_b = sc[-1].qubits
    imc_a, imc_b = imc[0].qubits
    for sc_ion in (sc_b, sc_a):
        for imc_ion in (imc_a, imc_b):
            if sc_ion != imc_ion and weights.get(_pair(sc_ion, imc_ion), 0) == 0:
                return ms(sc_ion, imc_ion)
    raise GenerationError(
        "all four bridging candidates collide with existing pairs; "
        "regenerate the SC block with a new seed")


@dataclass(frozen=True)
class SystematicAttack:
    spec: AttackSpec
    program: Program
    sc: tuple[Gate, ...]
    bridge: Gate
    imc: tuple[Gate, ...]
    sc_exhausted: bool
    predicted_shuttles: int = field(init=False)

    def __post_init__(self):
        # one shuttle per SC gate when the victim-size assumption is right
        object.__setattr__(self, "predicted_shuttles", len(self.sc))

    def sidecar(self) -> dict:
        return {
            "schema": "trapmux.attack/1",
            "method": "systematic",
            "trap_capacity": self.spec.trap_capacity,
            "comm_capacity": self.spec.comm_capacity,
            "adversary_size": self.spec.adversary_size,
            "assumed_victim_size": self.spec.assumed_victim_size,
            "sc_block_length": self.spec.sc_block_length,
            "sc_length_actual": len(self.sc),
            "sc_exhausted": self.sc_exhausted,
            "seed": self.spec.seed,
            "predicted_shuttles": self.predicted_shuttles,
            "n_gates": len(self.program.gates),
        }


_BRIDGE_RETRIES = 64


def assemble_detailed(spec: AttackSpec, cfg: DeviceConfig | None = None) -> SystematicAttack:
    """Generate IMC, SC and bridge, and stitch the malicious program.

    When all four bridging candidates collide with existing pairs the SC
    block is regenerated with a derived seed (a bounded number of times).
    """
    from ..seeding import derive_seed

    imc = build_imc(spec.trap_capacity)
    last_error: GenerationError | None = None
    for attempt in range(_BRIDGE_RETRIES):
        sc_seed = spec.seed if attempt == 0 else derive_seed(spec.seed, "sc-retry", attempt)
        sc, exhausted = _build_sc(spec, _imc_weights(spec), cfg, seed=sc_seed)
        if not sc:
            raise GenerationError("could not generate any SC gate")
        try:
            bridge = bridging_gate(sc, imc)
        except GenerationError as exc:
            last_error = exc
            continue
        program = Program("adv", spec.adversary_size, tuple([*sc, bridge, *imc]))
        return SystematicAttack(spec, program, tuple(sc), bridge, tuple(imc), exhausted)
    raise GenerationError(
        f"no bridging gate found after {_BRIDGE_RETRIES} SC regenerations: {last_error}")


def assemble(spec: AttackSpec, cfg: DeviceConfig | None = None) -> Program:
    return assemble_detailed(spec, cfg).program
