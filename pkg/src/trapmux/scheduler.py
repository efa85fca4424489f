"""Gate scheduling, shuttle insertion and fidelity accounting.

Tenants are interleaved round-robin (one gate per tenant per round, in
submission order, skipping exhausted tenants); gates of one tenant execute
strictly in program order.  A two-qubit gate whose ions sit in different
traps triggers a shuttle: the moving ion is swapped to the chain end next to
the shuttle path, split off, moved, and merged at the path end of the
destination chain, which is also where the chain picks up motional quanta.

The moving ion is decided by excess capacity: the gate ion in the lower-EC
trap moves into the higher-EC trap; on a tie the gate's first-listed ion
moves.  A move into a trap without excess capacity aborts compilation.

Logical time: every gate execution and every move advances the tick by one;
swaps, splits and merges share their shuttle's tick.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .circuit import GateKind, Program
from .device import DeviceConfig, IonId, MachineState
from .errors import SchedulingError, ShuttleBlockedError
from .fidelity import ChainEnergy, apply_heating, program_fidelity, raw_gate_fidelity

SCHEMA_SUMMARY = "trapmux.summary/1"


class EventKind(enum.Enum):
    GATE = "gate"
    SWAP = "swap"
    SPLIT = "split"
    MOVE = "move"
    MERGE = "merge"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    tick: int
    tenant: str
    gate_index: int
    ions: tuple[IonId, ...]
    src_trap: int | None = None
    dst_trap: int | None = None
    nbar_after: float | None = None
    fidelity: float | None = None


class ShuttleDecision(NamedTuple):
    ion: IonId
    src: int
    dst: int


@dataclass
class Schedule:
    events: tuple[Event, ...]
    per_gate_fidelity: dict[tuple[str, int], float]
    per_program_fidelity: dict[str, float]
    clamp_count: int
    initial_state: MachineState
    final_state: MachineState
    tenants: tuple[str, ...]
    shuttle_count: int = field(init=False)

    def __post_init__(self):
        self.shuttle_count = sum(1 for e in self.events if e.kind is EventKind.MOVE)


def count_shuttles(schedule: Schedule) -> int:
    return schedule.shuttle_count


def shuttle_direction(state: MachineState, first: IonId, second: IonId,
                      cfg: DeviceConfig) -> ShuttleDecision:
    """Pick the moving ion for a cross-trap gate.

    Raises SchedulingError when the ions are co-located and
    ShuttleBlockedError when the destination has no excess capacity.
    """
    trap_a = state.trap_of(first)
    trap_b = state.trap_of(second)
    if trap_a == trap_b:
        raise SchedulingError(
            f"{first.label()} and {second.label()} are co-located in trap {trap_a}")
    ec_a = state.excess_capacity(trap_a)
    ec_b = state.excess_capacity(trap_b)
    if ec_a < ec_b:
        decision = ShuttleDecision(first, trap_a, trap_b)
    elif ec_a > ec_b:
        decision = ShuttleDecision(second, trap_b, trap_a)
    else:
        decision = ShuttleDecision(first, trap_a, trap_b)
    if state.excess_capacity(decision.dst) == 0:
        raise ShuttleBlockedError(
            f"trap {decision.dst} has no excess capacity for {decision.ion.label()}")
    return decision


def compile_programs(programs: Sequence[Program], initial: MachineState,
                     cfg: DeviceConfig) -> Schedule:
    """Compile co-resident programs on a mapped machine."""
    pp = cfg.physics
    for p in programs:
        for q in range(p.n_qubits):
            initial.locate(p.id, q)
    state = initial.clone()
    snapshot = initial.clone()
    total_ions = state.n_ions

    events: list[Event] = []
    per_gate: dict[tuple[str, int], float] = {}
    clamps = 0
    tick = 0
    cursors = [0] * len(programs)

    def emit(kind: EventKind, tenant: str, gate_index: int, ions: tuple[IonId, ...],
             src: int | None, dst: int | None, fidelity: float | None = None) -> None:
        nonlocal clamps
        ev = Event(kind, tick, tenant, gate_index, ions, src, dst)
        apply_heating(state, ev, pp)
        affected = dst if dst is not None else src
        ev = replace(ev, nbar_after=state.nbar[affected] if affected is not None else None,
                     fidelity=fidelity)
        events.append(ev)

    while any(c < len(p.gates) for c, p in zip(cursors, programs)):
        for i, p in enumerate(programs):
            k = cursors[i]
            if k >= len(p.gates):
                continue
            cursors[i] += 1
            gate = p.gates[k]
            if gate.kind is GateKind.VZ:
                ion = IonId(p.id, gate.qubits[0])
                trap = state.trap_of(ion)
                emit(EventKind.GATE, p.id, k, (ion,), trap, trap, fidelity=1.0)
                tick += 1
                continue
            ion_a = IonId(p.id, gate.qubits[0])
            ion_b = IonId(p.id, gate.qubits[1])
            exec_trap = state.trap_of(ion_a)
            if state.trap_of(ion_b) != exec_trap:
                try:
                    mover, src, dst = shuttle_direction(state, ion_a, ion_b, cfg)
                except ShuttleBlockedError as exc:
                    raise ShuttleBlockedError(
                        f"tenant {p.id!r} gate {k} "
                        f"(MS q[{gate.qubits[0]}],q[{gate.qubits[1]}]): {exc}") from exc
                end = state.path_end(src, toward=dst)
                pos = state.locate(mover.tenant, mover.qubit)[1]
                while pos != end:
                    step = 1 if end > pos else -1
                    neighbour = state.chains[src][pos + step]
                    state.swap_with_next(src, min(pos, pos + step))
                    emit(EventKind.SWAP, p.id, k, (mover, neighbour), src, src)
                    pos += step
                state.remove_ion(mover)
                emit(EventKind.SPLIT, p.id, k, (mover,), src, None)
                emit(EventKind.MOVE, p.id, k, (mover,), src, dst)
                state.insert_ion(mover, dst, at_head=(src < dst))
                emit(EventKind.MERGE, p.id, k, (mover,), src, dst)
                tick += 1
                exec_trap = dst
            chain = ChainEnergy(state.nbar[exec_trap], len(state.chains[exec_trap]))
            raw = raw_gate_fidelity(pp, chain)
            fid = min(1.0, max(0.0, raw))
            if fid != raw:
                clamps += 1
            per_gate[(p.id, k)] = fid
            emit(EventKind.GATE, p.id, k, (ion_a, ion_b), exec_trap, exec_trap,
                 fidelity=fid)
            tick += 1
            if state.n_ions != total_ions:
                raise SchedulingError("ion count changed during compilation")

    per_prog = {
        p.id: program_fidelity(per_gate[(p.id, k)]
                               for k, g in enumerate(p.gates)
                               if g.kind is GateKind.MS)
        for p in programs
    }
    return Schedule(tuple(events), per_gate, per_prog, clamps,
                    snapshot, state, tuple(p.id for p in programs))


def replay(initial: MachineState, events: Iterable[Event],
           cfg: DeviceConfig) -> MachineState:
    """Mechanically apply a schedule's events to a state copy.

    Replaying a schedule against its initial state reproduces the final
    state, chain energies included.
    """
    pp = cfg.physics
    state = initial.clone()
    for ev in events:
        if ev.kind is EventKind.SWAP:
            trap, pos_a = state.locate(*ev.ions[0])
            trap_b, pos_b = state.locate(*ev.ions[1])
            if trap != trap_b or abs(pos_a - pos_b) != 1 or trap != ev.src_trap:
                raise SchedulingError("swap event does not match state")
            state.swap_with_next(trap, min(pos_a, pos_b))
        elif ev.kind is EventKind.SPLIT:
            state.remove_ion(ev.ions[0])
        elif ev.kind is EventKind.MERGE:
            state.insert_ion(ev.ions[0], ev.dst_trap,
                             at_head=(ev.src_trap < ev.dst_trap))
        apply_heating(state, ev, pp)
    return state


def trace_rows(schedule: Schedule) -> list[dict]:
    rows = []
    for ev in schedule.events:
        rows.append({
            "tick": ev.tick,
            "kind": ev.kind.value,
            "tenant": ev.tenant,
            "gate_index": ev.gate_index,
            "ion": ";".join(ion.label() for ion in ev.ions),
            "src_trap": "" if ev.src_trap is None else ev.src_trap,
            "dst_trap": "" if ev.dst_trap is None else ev.dst_trap,
            "nbar_dst": "" if ev.nbar_after is None else repr(ev.nbar_after),
            "fidelity": "" if ev.fidelity is None else repr(ev.fidelity),
        })
    return rows

TRACE_COLUMNS = ["tick", "kind", "tenant", "gate_index", "ion",
                 "src_trap", "dst_trap", "nbar_dst", "fidelity"]


def write_trace_csv(schedule: Schedule, path: str | Path | io.TextIOBase) -> None:
    rows = trace_rows(schedule)
    if isinstance(path, (str, Path)):
        with open(path, "w", newline="") as fh:
            _write_rows(fh, rows)
    else:
        _write_rows(path, rows)


def _write_rows(fh, rows: list[dict]) -> None:
    writer = csv.DictWriter(fh, fieldnames=TRACE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def summary(schedule: Schedule) -> dict:
    """JSON-ready run summary."""
    return {
        "schema": SCHEMA_SUMMARY,
        "shuttle_count": schedule.shuttle_count,
        "clamp_count": schedule.clamp_count,
        "n_events": len(schedule.events),
        "tenants": list(schedule.tenants),
        "per_program": {
            tenant: {
                "fidelity": schedule.per_program_fidelity[tenant],
                "gate_fidelities": [
                    fid for (t, _), fid in sorted(
                        schedule.per_gate_fidelity.items(),
                        key=lambda item: item[0][1])
                    if t == tenant
                ],
            }
            for tenant in schedule.tenants
        },
        "initial_layout": schedule.initial_state.layout(),
        "final_layout": schedule.final_state.layout(),
        "final_nbar": list(schedule.final_state.nbar),
    }
