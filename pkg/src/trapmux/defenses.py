"""Countermeasures against shuttle-heavy co-tenants.

Three mechanisms: hybrid initial mapping (compile under greedy and random,
keep the cheaper one), dummy-qubit padding (fill the victim's trap so no
adversary ion can share it), and shuttle-capped admission (programs whose
solo shuttle count exceeds a maximum run single-tenant at whole-device
cost).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuit import Program, vz
from .device import DeviceConfig
from .errors import ConfigError
from .run import compile_corun, compile_solo
from .scheduler import Schedule
from .seeding import derive_seed


@dataclass
class HybridDecision:
    policy: str  # "greedy" or "random"
    greedy_shuttles: int
    random_shuttles: list[int]
    chosen_seed: int | None
    schedule: Schedule

    @property
    def shuttle_count(self) -> int:
        return self.schedule.shuttle_count

    def report(self) -> dict:
        return {
            "schema": "trapmux.hybrid/1",
            "policy": self.policy,
            "greedy_shuttles": self.greedy_shuttles,
            "random_shuttles": self.random_shuttles,
            "chosen_shuttles": self.shuttle_count,
            "chosen_seed": self.chosen_seed,
        }


def hybrid_map(programs: Sequence[Program], cfg: DeviceConfig, seed: int,
               draws: int = 1) -> HybridDecision:
    """Compile under greedy and under `draws` random mappings, keep the
    mapping with the fewest shuttles (ties favour greedy)."""
    if draws < 1:
        raise ConfigError("draws must be >= 1")
    greedy = compile_corun(programs, cfg, "greedy")
    random_runs: list[tuple[Schedule, int]] = []
    for d in range(draws):
        draw_seed = derive_seed(seed, "hybrid", d)
        random_runs.append(
            (compile_corun(programs, cfg, "random", draw_seed), draw_seed))
    best_random, best_seed = min(random_runs, key=lambda r: r[0].shuttle_count)
    if greedy.shuttle_count <= best_random.shuttle_count:
        return HybridDecision("greedy", greedy.shuttle_count,
                              [s.shuttle_count for s, _ in random_runs],
                              None, greedy)
    return HybridDecision("random", greedy.shuttle_count,
                          [s.shuttle_count for s, _ in random_runs],
                          best_seed, best_random)


def pad_victim(p: Program, target_size: int) -> Program:
    """Grow a program to `target_size` qubits with dummy qubits.

    Each dummy gets one zero-cost phase gate so mapping allocates it; the
    two-qubit gate list is untouched and dummies never cost fidelity.
    """
    if target_size < p.n_qubits:
        raise ConfigError(
            f"target size {target_size} below program size {p.n_qubits}")
    if target_size == p.n_qubits:
        return p
    pads = tuple(vz(q) for q in range(p.n_qubits, target_size))
    return Program(p.id, target_size, p.gates + pads)


@dataclass
class AdmitEntry:
    tenant: str
    n_qubits: int
    solo_shuttles: int
    mode: str  # "multi" or "single"
    cost_units: int


@dataclass
class AdmitReport:
    max_shuttles: int
    entries: list[AdmitEntry]
    corun_shuttles: int | None  # multi-tenant co-run count, when two programs qualify

    def mode_of(self, tenant: str) -> str:
        for e in self.entries:
            if e.tenant == tenant:
                return e.mode
        raise ConfigError(f"no admission entry for tenant {tenant!r}")

    def report(self) -> dict:
        return {
            "schema": "trapmux.admit/1",
            "max_shuttles": self.max_shuttles,
            "programs": [
                {"tenant": e.tenant, "n_qubits": e.n_qubits,
                 "solo_shuttles": e.solo_shuttles, "mode": e.mode,
                 "cost_units": e.cost_units}
                for e in self.entries
            ],
            "corun_shuttles": self.corun_shuttles,
        }


def admit(programs: Sequence[Program], cfg: DeviceConfig,
          max_shuttles: int) -> AdmitReport:
    """Pre-compile each program alone; shuttle counts above the cap force
    single-tenant scheduling at whole-device cost (1 unit per qubit slot)."""
    if max_shuttles < 0:
        raise ConfigError("max_shuttles must be >= 0")
    entries: list[AdmitEntry] = []
    multi: list[Program] = []
    for p in programs:
        solo = compile_solo(p, cfg).shuttle_count
        if solo > max_shuttles:
            cost = cfg.n_traps * cfg.trap_capacity
            entries.append(AdmitEntry(p.id, p.n_qubits, solo, "single", cost))
        else:
            entries.append(AdmitEntry(p.id, p.n_qubits, solo, "multi", p.n_qubits))
            multi.append(p)
    corun = None
    if len(multi) == 2 and sum(m.n_qubits for m in multi) <= cfg.total_capacity:
        corun = compile_corun(multi, cfg).shuttle_count
    return AdmitReport(max_shuttles, entries, corun)
