"""Victim-size sweeps, the inverse coefficient of variation, and
fidelity-reduction experiments.

The adversary does not know the victim's size, so attacks are generated for
a sweep of assumed sizes and compiled against victims of every actual size.
Per assumption the sweep reports mean and population standard deviation of
the shuttle counts plus the inverse coefficient of variation
``icv = (mu/mu_max) / (sigma/sigma_max)`` with maxima taken across the sweep;
the assumption with the highest ICV is the recommended one (high mean,
tight spread).
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Literal, NamedTuple, Sequence

from .attacks.random_search import random_victim, search_best
from .attacks.systematic import AttackSpec, assemble
from .circuit import Program
from .device import DeviceConfig
from .errors import ConfigError
from .run import compile_corun, compile_solo
from .seeding import derive_seed

SWEEP_VICTIM_LENGTH = 80

Method = Literal["systematic", "random"]


class IcvStats(NamedTuple):
    mu: float
    sigma: float
    icv: float


def icv(values: Sequence[float], mu_max: float = 1.0,
        sigma_max: float = 1.0) -> IcvStats:
    """Mean, population standard deviation and normalized mu/sigma ratio.

    Pass the sweep-wide maxima to normalize; with the default maxima of 1
    the ratio is the plain inverse coefficient of variation.  A zero sigma
    yields an infinite ICV.
    """
    if not values:
        raise ConfigError("icv of an empty list")
    mu = statistics.fmean(values)
    sigma = statistics.pstdev(values)
    mu_norm = mu / mu_max if mu_max else 0.0
    if sigma == 0 or sigma_max == 0:
        return IcvStats(mu, sigma, math.inf)
    return IcvStats(mu, sigma, mu_norm / (sigma / sigma_max))


@dataclass
class SweepResult:
    method: Method
    sizes: list[int]
    sc_length: int
    table: dict[int, dict[int, int]]  # assumed -> actual -> shuttle count
    stats: dict[int, IcvStats]
    best_assumption: int

    def report(self) -> dict:
        return {
            "schema": "trapmux.sweep/1",
            "method": self.method,
            "sizes": self.sizes,
            "sc_length": self.sc_length,
            "table": {str(a): {str(s): c for s, c in row.items()}
                      for a, row in self.table.items()},
            "stats": {str(a): {"mu": st.mu, "sigma": st.sigma,
                               "icv": None if math.isinf(st.icv) else st.icv,
                               "icv_is_infinite": math.isinf(st.icv)}
                      for a, st in self.stats.items()},
            "best_assumption": self.best_assumption,
        }

    def to_csv(self) -> str:
        lines = ["assumed\\actual," + ",".join(str(s) for s in self.sizes)]
        for a in self.sizes:
            lines.append(f"{a}," + ",".join(str(self.table[a][s]) for s in self.sizes))
        return "\n".join(lines) + "\n"


def _attack_for(method: Method, assumed: int, cfg: DeviceConfig, sc_length: int,
                seed: int, n_candidates: int) -> Program:
    if method == "systematic":
        spec = AttackSpec(trap_capacity=cfg.trap_capacity,
                          comm_capacity=cfg.comm_capacity,
                          assumed_victim_size=assumed,
                          sc_block_length=sc_length,
                          seed=derive_seed(seed, "attack", assumed))
        return assemble(spec, cfg)
    best, _ = search_best(n_candidates, [assumed], cfg,
                          derive_seed(seed, "search", assumed))
    return best


def sweep_assumptions(method: Method, cfg: DeviceConfig, sizes: Sequence[int],
                      sc_length: int, seed: int,
                      n_candidates: int = 100) -> SweepResult:
    """Build one attack per assumed size and compile it against victims of
    every actual size."""
    sizes = list(sizes)
    spill = 3  # adversary qubits overflowing into the shared trap
    for s in sizes:
        if not 2 <= s <= cfg.trap_capacity - spill:
            raise ConfigError(
                f"victim size {s} outside feasible range "
                f"2..{cfg.trap_capacity - spill}")
    victims = {
        s: random_victim(s, SWEEP_VICTIM_LENGTH, derive_seed(seed, "actual-victim", s))
        for s in sizes
    }
    table: dict[int, dict[int, int]] = {}
    for assumed in sizes:
        attack = _attack_for(method, assumed, cfg, sc_length, seed, n_candidates)
        table[assumed] = {
            s: compile_corun([attack, victims[s]], cfg).shuttle_count
            for s in sizes
        }
    raw = {a: icv(list(row.values())) for a, row in table.items()}
    mu_max = max(st.mu for st in raw.values())
    sigma_max = max(st.sigma for st in raw.values())
    stats = {a: icv(list(table[a].values()), mu_max, sigma_max) for a in sizes}
    best = max(sizes, key=lambda a: (stats[a].icv, -a))
    return SweepResult(method, sizes, sc_length, table, stats, best)


@dataclass
class FidelityReduction:
    ratio: float
    victim_fidelity_solo: float
    victim_fidelity_corun: float
    corun_shuttles: int
    clamped_gates: int
    degenerate: bool

    def report(self) -> dict:
        return {
            "schema": "trapmux.reduction/1",
            "ratio": None if math.isnan(self.ratio) or math.isinf(self.ratio)
            else self.ratio,
            "ratio_sentinel": ("nan" if math.isnan(self.ratio)
                               else "inf" if math.isinf(self.ratio) else None),
            "victim_fidelity_solo": self.victim_fidelity_solo,
            "victim_fidelity_corun": self.victim_fidelity_corun,
            "corun_shuttles": self.corun_shuttles,
            "clamped_gates": self.clamped_gates,
            "degenerate": self.degenerate,
            "baseline": "victim compiled alone, same device and policy",
        }


def fidelity_reduction(victim: Program, attack: Program, cfg: DeviceConfig,
                       policy: Literal["greedy", "random"] = "greedy",
                       seed: int | None = None) -> FidelityReduction:
    """Victim program fidelity alone divided by its fidelity co-run with the
    attack, both compiled under the same mapping policy."""
    if policy == "greedy":
        solo = compile_solo(victim, cfg)
        corun = compile_corun([attack, victim], cfg)
    else:
        solo = compile_corun([victim], cfg, "random", derive_seed(seed, "solo"))
        corun = compile_corun([attack, victim], cfg, "random",
                              derive_seed(seed, "corun"))
    f_solo = solo.per_program_fidelity[victim.id]
    f_corun = corun.per_program_fidelity[victim.id]
    if f_solo == 0.0:
        ratio, degenerate = math.nan, True
    elif f_corun == 0.0:
        ratio, degenerate = math.inf, True
    else:
        ratio, degenerate = f_solo / f_corun, False
    return FidelityReduction(ratio, f_solo, f_corun, corun.shuttle_count,
                             corun.clamp_count, degenerate)
