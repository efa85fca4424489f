"""Two-qubit-gate skeletons of common NISQ benchmarks.

Only pair interactions matter for shuttle counts and the fidelity model, so
generators emit MS skeletons rather than full gate decompositions: each
controlled-phase / CNOT contributes its qubit pair once and each Toffoli
contributes the six pair interactions of its standard decomposition.
"""

from __future__ import annotations

import random

from .circuit import Gate, Program, ms
from .errors import ConfigError


def gen_qft(n: int, pid: str = "qft") -> Program:
    """Controlled-phase pair per (i, j), i < j, in standard order."""
    if n < 2:
        raise ConfigError("QFT needs at least 2 qubits")
    gates = tuple(ms(i, j) for i in range(n) for j in range(i + 1, n))
    return Program(pid, n, gates)


def _cx(a: int, b: int) -> list[Gate]:
    return [ms(a, b)]


def _toffoli(a: int, b: int, c: int) -> list[Gate]:
    # six CNOTs of the textbook decomposition: (b,c) (a,c) (b,c) (a,c) (a,b) (a,b)
    return [ms(b, c), ms(a, c), ms(b, c), ms(a, c), ms(a, b), ms(a, b)]


def gen_adder(n: int, pid: str = "adder") -> Program:
    """Ripple-carry adder skeleton over n = 2m + 2 qubits (n even, >= 4).

    Register layout: carry-in at 0, summand bits a_i at 2i+1, b_i at 2i+2
    ... flattened as [c0, a0..a(m-1), b0..b(m-1), z]; a MAJ chain runs
    forward, the carry is copied out to z, and a UMA chain runs backward.
    """
    if n < 4 or n % 2:
        raise ConfigError("adder needs an even qubit count >= 4")
    m = (n - 2) // 2
    c0, z = 0, n - 1
    a = [1 + i for i in range(m)]
    b = [1 + m + i for i in range(m)]
    gates: list[Gate] = []

    def maj(c: int, y: int, x: int) -> None:
        gates.extend(_cx(x, y))
        gates.extend(_cx(x, c))
        gates.extend(_toffoli(c, y, x))

    def uma(c: int, y: int, x: int) -> None:
        gates.extend(_toffoli(c, y, x))
        gates.extend(_cx(x, c))
        gates.extend(_cx(c, y))

    carries = [c0] + a[:-1]
    for i in range(m):
        maj(carries[i], b[i], a[i])
    gates.extend(_cx(a[m - 1], z))
    for i in reversed(range(m)):
        uma(carries[i], b[i], a[i])
    return Program(pid, n, tuple(gates))


def gen_qaoa(n: int, density: float, seed: int, pid: str = "qaoa") -> Program:
    """One pair interaction per edge of a seeded Erdos-Renyi graph."""
    if n < 2:
        raise ConfigError("QAOA needs at least 2 qubits")
    if not 0.0 < density <= 1.0:
        raise ConfigError("density must be in (0, 1]")
    rng = random.Random(seed)
    gates = tuple(ms(i, j)
                  for i in range(n) for j in range(i + 1, n)
                  if rng.random() < density)
    return Program(pid, n, gates)
