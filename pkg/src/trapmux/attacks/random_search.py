"""Black-box adversarial program search.

A candidate program contains one gate for every unordered qubit pair of the
adversary's register in a seeded-random order.  The search compiles many
candidates against one pseudo-victim per victim size and keeps the candidate
with the highest mean shuttle count; pruning then drops gates one by one
whenever removal does not lower the shuttle count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal, Sequence

from ..circuit import Program, ms
from ..device import DeviceConfig
from ..errors import ConfigError
from ..run import compile_corun
from ..seeding import derive_seed

PSEUDO_VICTIM_LENGTH = 80

PruneMetric = Literal["single", "mean"]


def gen_candidate(n_qubits: int, seed: int, pid: str = "adv") -> Program:
    """All C(n,2) pair gates in a seeded uniform shuffle."""
    if n_qubits < 2:
        raise ConfigError("candidate needs at least 2 qubits")
    pairs = [(i, j) for i in range(n_qubits) for j in range(i + 1, n_qubits)]
    random.Random(seed).shuffle(pairs)
    return Program(pid, n_qubits, tuple(ms(a, b) for a, b in pairs))


def random_victim(size: int, length: int, seed: int, pid: str = "victim") -> Program:
    """Seeded random program: one uniform qubit pair per gate."""
    if size < 2:
        raise ConfigError("victim needs at least 2 qubits")
    rng = random.Random(seed)
    gates = tuple(ms(*rng.sample(range(size), 2)) for _ in range(length))
    return Program(pid, size, gates)


@dataclass
class RandomSearchStats:
    victim_sizes: list[int]
    shuttle_matrix: list[list[int]]  # [candidate][victim size index]
    means: list[float]
    best_index: int
    best_mean: float

    def report(self) -> dict:
        return {
            "schema": "trapmux.random-search/1",
            "victim_sizes": self.victim_sizes,
            "shuttle_matrix": self.shuttle_matrix,
            "means": self.means,
            "best_index": self.best_index,
            "best_mean": self.best_mean,
        }


def search_best(n_candidates: int, victim_sizes: Sequence[int], cfg: DeviceConfig,
                seed: int, n_qubits: int | None = None
                ) -> tuple[Program, RandomSearchStats]:
    """Pick the candidate with the highest mean shuttles; ties keep the
    earliest candidate."""
    if n_candidates < 1:
        raise ConfigError("need at least one candidate")
    if not victim_sizes:
        raise ConfigError("need at least one victim size")
    if n_qubits is None:
        n_qubits = cfg.trap_capacity + 3
    victims = {
        s: random_victim(s, PSEUDO_VICTIM_LENGTH, derive_seed(seed, "victim", s))
        for s in victim_sizes
    }
    matrix: list[list[int]] = []
    means: list[float] = []
    best_index = 0
    best_prog: Program | None = None
    for idx in range(n_candidates):
        cand = gen_candidate(n_qubits, derive_seed(seed, "candidate", idx))
        row = [compile_corun([cand, victims[s]], cfg).shuttle_count
               for s in victim_sizes]
        matrix.append(row)
        mean = sum(row) / len(row)
        means.append(mean)
        if best_prog is None or mean > means[best_index]:
            best_index = idx
            best_prog = cand
    stats = RandomSearchStats(list(victim_sizes), matrix, means,
                              best_index, means[best_index])
    return best_prog, stats


@dataclass(frozen=True)
class PruneStep:
    gate_index: int
    removed: bool
    shuttles_without: float


def _metric(p: Program, victims: Sequence[Program], cfg: DeviceConfig) -> float:
    counts = [compile_corun([p, v], cfg).shuttle_count for v in victims]
    return sum(counts) / len(counts)


def prune(p: Program, victim: Program | Sequence[Program], cfg: DeviceConfig,
          ) -> tuple[Program, list[PruneStep]]:
    """Single forward pass: drop each gate whose removal does not lower the
    shuttle count below the baseline.

    Passing one victim program evaluates removals against it alone; passing
    several evaluates the mean across them.
    """
    victims = [victim] if isinstance(victim, Program) else list(victim)
    baseline = _metric(p, victims, cfg)
    kept = list(p.gates)
    log: list[PruneStep] = []
    i = 0
    original_index = 0
    while i < len(kept):
        trial = Program(p.id, p.n_qubits, tuple(kept[:i] + kept[i + 1:]))
        without = _metric(trial, victims, cfg)
        if without >= baseline:
            del kept[i]
            log.append(PruneStep(original_index, True, without))
        else:
            log.append(PruneStep(original_index, False, without))
            i += 1
        original_index += 1
    return Program(p.id, p.n_qubits, tuple(kept)), log
