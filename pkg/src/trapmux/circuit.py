"""Circuit representation and the `.qprog` text format.

A program is an ordered list of gates over the logical qubits of one tenant.
Only two gate kinds exist: the native two-qubit entangling gate (MS) and the
zero-cost software phase gate (VZ, spelled `GZ` in program text).  Gate order
is semantically significant; dependencies are positional.

Text format (UTF-8, LF lines, extension `.qprog`):

    # comment
    qubits 6          # optional header, must precede gates; overrides the
                      # inferred qubit count (1 + max referenced index)
    MS q[0],q[3]
    GZ q[5]
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GateError, ProgramParseError


class GateKind(enum.Enum):
    MS = "MS"
    VZ = "GZ"


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self):
        if any(q < 0 for q in self.qubits):
            raise GateError(f"negative qubit index in {self.qubits}")
        if self.kind is GateKind.MS:
            if len(self.qubits) != 2:
                raise GateError("MS gate takes exactly two qubits")
            if self.qubits[0] == self.qubits[1]:
                raise GateError(f"duplicate qubit q[{self.qubits[0]}] in MS gate")
        elif len(self.qubits) != 1:
            raise GateError("GZ gate takes exactly one qubit")

    @property
    def pair(self) -> tuple[int, int]:
        """Unordered qubit pair of an MS gate, as a sorted tuple."""
        a, b = self.qubits
        return (a, b) if a < b else (b, a)


def ms(a: int, b: int) -> Gate:
    return Gate(GateKind.MS, (a, b))


def vz(q: int) -> Gate:
    return Gate(GateKind.VZ, (q,))


@dataclass(frozen=True)
class Program:
    """Gates of a single tenant.

    `id` identifies the tenant for multi-programming; it is not part of the
    text format and is excluded from structural equality.
    """

    id: str = field(compare=False)
    n_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        if self.n_qubits < 0:
            raise GateError("n_qubits must be >= 0")
        for g in self.gates:
            for q in g.qubits:
                if q >= self.n_qubits:
                    raise GateError(
                        f"gate references q[{q}] but program has {self.n_qubits} qubits"
                    )

    @property
    def ms_gates(self) -> tuple[Gate, ...]:
        return tuple(g for g in self.gates if g.kind is GateKind.MS)

    @property
    def length(self) -> int:
        """Program length = number of two-qubit gates."""
        return sum(1 for g in self.gates if g.kind is GateKind.MS)


def program(pid: str, n_qubits: int, gates: Iterable[Gate]) -> Program:
    return Program(pid, n_qubits, tuple(gates))


@dataclass
class EdgeWeights:
    """Occurrence counts of unordered MS qubit pairs.

    `first_index` is the position (over MS gates only) of each pair's first
    occurrence; `first_listed` is the qubit order as written at that first
    occurrence.  Both exist so the mapper never has to re-scan the program.
    """

    counts: dict[tuple[int, int], int]
    first_index: dict[tuple[int, int], int]
    first_listed: dict[tuple[int, int], tuple[int, int]]

    def weight(self, a: int, b: int) -> int:
        return self.counts.get((a, b) if a < b else (b, a), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def edge_weights(p: Program) -> EdgeWeights:
    counts: dict[tuple[int, int], int] = {}
    first_index: dict[tuple[int, int], int] = {}
    first_listed: dict[tuple[int, int], tuple[int, int]] = {}
    for i, g in enumerate(p.ms_gates):
        key = g.pair
        if key not in counts:
            counts[key] = 0
            first_index[key] = i
            first_listed[key] = (g.qubits[0], g.qubits[1])
        counts[key] += 1
    return EdgeWeights(counts, first_index, first_listed)


def concat(blocks: Sequence[Sequence[Gate]], pid: str = "prog",
           n_qubits: int | None = None) -> Program:
    """Join gate blocks (sharing one qubit index space) into a single program."""
    gates: list[Gate] = []
    for block in blocks:
        gates.extend(block)
    if n_qubits is None:
        n_qubits = 1 + max((q for g in gates for q in g.qubits), default=-1)
    return Program(pid, n_qubits, tuple(gates))


_GATE_RE = re.compile(
    r"^(?P<op>MS|GZ)\s+q\[(?P<a>\d+)\]\s*(?:,\s*q\[(?P<b>\d+)\]\s*)?$"
)
_HEADER_RE = re.compile(r"^qubits\s+(?P<n>\d+)$")


def parse_program(text: str, pid: str = "prog") -> Program:
    """Parse `.qprog` text. Raises ProgramParseError with the offending line."""
    gates: list[Gate] = []
    declared: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _HEADER_RE.match(line)
        if header:
            if declared is not None:
                raise ProgramParseError("duplicate qubits header", lineno)
            if gates:
                raise ProgramParseError("qubits header must precede gates", lineno)
            declared = int(header.group("n"))
            continue
        m = _GATE_RE.match(line)
        if not m:
            raise ProgramParseError(f"cannot parse {line!r}", lineno)
        op, a, b = m.group("op"), m.group("a"), m.group("b")
        try:
            if op == "MS":
                if b is None:
                    raise ProgramParseError("MS gate needs two qubits", lineno)
                gates.append(ms(int(a), int(b)))
            else:
                if b is not None:
                    raise ProgramParseError("GZ gate takes one qubit", lineno)
                gates.append(vz(int(a)))
        except GateError as exc:
            raise ProgramParseError(str(exc), lineno) from exc
    inferred = 1 + max((q for g in gates for q in g.qubits), default=-1)
    n_qubits = declared if declared is not None else inferred
    if n_qubits < inferred:
        raise ProgramParseError(
            f"qubits header declares {n_qubits} but gates reference q[{inferred - 1}]"
        )
    return Program(pid, n_qubits, tuple(gates))


def emit_program(p: Program) -> str:
    """Emit `.qprog` text; `parse_program(emit_program(p))` equals `p` structurally."""
    lines = [f"qubits {p.n_qubits}"]
    for g in p.gates:
        if g.kind is GateKind.MS:
            lines.append(f"MS q[{g.qubits[0]}],q[{g.qubits[1]}]")
        else:
            lines.append(f"GZ q[{g.qubits[0]}]")
    return "\n".join(lines) + "\n"
