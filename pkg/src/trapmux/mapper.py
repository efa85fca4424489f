"""Initial mapping policies.

Greedy places qubits in descending edge-weight order (ties broken by first
appearance in the program; within an edge the first-listed qubit goes first),
filling traps along the requested direction.  Qubits that appear in no
two-qubit gate are placed last in ascending index order.

Multi-program placement puts program 0 at trap 0 growing forward and
program 1 at the far end of the last trap growing backward, so tenants
occupy disjoint contiguous segments and never interleave.  Initial placement
only ever uses `trap_capacity` slots per trap; communication slots stay free
for shuttled ions.
"""

from __future__ import annotations

import random
from typing import Literal, Sequence

from .circuit import Program, edge_weights
from .device import DeviceConfig, IonId, MachineState
from .errors import CapacityError, ConfigError
from .seeding import derive_seed

Slot = tuple[int, int]  # (trap, slot index inside the trap)

Direction = Literal["forward", "backward"]
Policy = Literal["greedy", "random"]
RandomScope = Literal["segment", "trap"]


def _forward_slots(cfg: DeviceConfig, start_trap: int = 0) -> list[Slot]:
    return [(t, k) for t in range(start_trap, cfg.n_traps)
            for k in range(cfg.trap_capacity)]


def _backward_slots(cfg: DeviceConfig, start_trap: int | None = None) -> list[Slot]:
    if start_trap is None:
        start_trap = cfg.n_traps - 1
    return [(t, k) for t in range(start_trap, -1, -1)
            for k in range(cfg.trap_capacity - 1, -1, -1)]


def greedy_order(p: Program) -> list[int]:
    """Qubit placement order under the greedy policy."""
    ew = edge_weights(p)
    order: list[int] = []
    placed: set[int] = set()
    for pair in sorted(ew.counts, key=lambda k: (-ew.counts[k], ew.first_index[k])):
        for q in ew.first_listed[pair]:
            if q not in placed:
                placed.add(q)
                order.append(q)
    for q in range(p.n_qubits):
        if q not in placed:
            order.append(q)
    return order


def _build_state(cfg: DeviceConfig,
                 assignment: dict[IonId, Slot]) -> MachineState:
    by_trap: dict[int, list[tuple[int, IonId]]] = {t: [] for t in range(cfg.n_traps)}
    for ion, (trap, k) in assignment.items():
        by_trap[trap].append((k, ion))
    chains = [[ion for _, ion in sorted(by_trap[t])] for t in range(cfg.n_traps)]
    return MachineState(cfg, chains)


def _assign(qubits: Sequence[int], tenant: str, slots: Sequence[Slot]) -> dict[IonId, Slot]:
    if len(qubits) > len(slots):
        raise CapacityError(
            f"program {tenant!r} needs {len(qubits)} slots, region has {len(slots)}")
    return {IonId(tenant, q): slots[i] for i, q in enumerate(qubits)}


def greedy_map(p: Program, cfg: DeviceConfig, start_trap: int = 0,
               direction: Direction = "forward") -> MachineState:
    """Map a single program greedily from `start_trap` in `direction`."""
    slots = (_forward_slots(cfg, start_trap) if direction == "forward"
             else _backward_slots(cfg, start_trap))
    return _build_state(cfg, _assign(greedy_order(p), p.id, slots))


def random_map(p: Program, cfg: DeviceConfig, region: Sequence[Slot],
               seed: int) -> MachineState:
    """Uniformly place a program's qubits over `region`, deterministic in seed."""
    rng = random.Random(seed)
    if len(region) < p.n_qubits:
        raise CapacityError(
            f"program {p.id!r} needs {p.n_qubits} slots, region has {len(region)}")
    chosen = rng.sample(list(region), p.n_qubits)
    return _build_state(cfg, {IonId(p.id, q): chosen[q] for q in range(p.n_qubits)})


def place_multi(programs: Sequence[Program], policy: Policy, cfg: DeviceConfig,
                seed: int | None = None,
                random_scope: RandomScope = "segment") -> MachineState:
    """Place up to two tenant programs on an empty machine.

    With the random policy, `random_scope="segment"` shuffles each tenant
    inside the same contiguous segment greedy would use, while
    `random_scope="trap"` samples each tenant's slots from the whole device,
    allowing tenants to interleave inside a trap.
    """
    if not programs:
        raise ConfigError("no programs to place")
    if len(programs) > 2:
        raise ConfigError("at most two co-resident programs are supported")
    if len({p.id for p in programs}) != len(programs):
        raise ConfigError("programs must have distinct tenant ids")
    total = sum(p.n_qubits for p in programs)
    if total > cfg.total_capacity:
        raise CapacityError(
            f"{total} qubits exceed device capacity {cfg.total_capacity}")
    if policy == "random" and seed is None:
        raise ConfigError("random placement needs a seed")

    assignment: dict[IonId, Slot] = {}
    if policy == "random" and random_scope == "trap":
        free = _forward_slots(cfg)
        for i, p in enumerate(programs):
            rng = random.Random(derive_seed(seed, "place", i))
            chosen = rng.sample(free, p.n_qubits)
            assignment.update({IonId(p.id, q): chosen[q] for q in range(p.n_qubits)})
            taken = set(chosen)
            free = [s for s in free if s not in taken]
        return _build_state(cfg, assignment)

    regions = [_forward_slots(cfg), _backward_slots(cfg)]
    for i, p in enumerate(programs):
        segment = regions[i][: p.n_qubits]
        if policy == "greedy":
            order = greedy_order(p)
        else:
            rng = random.Random(derive_seed(seed, "place", i))
            order = list(range(p.n_qubits))
            rng.shuffle(order)
        assignment.update(_assign(order, p.id, segment))
    # disjointness of the forward prefix and backward suffix is implied by
    # the total-capacity check above
    return _build_state(cfg, assignment)
