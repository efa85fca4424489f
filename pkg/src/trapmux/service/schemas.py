"""Request/response models of the HTTP API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..device import DeviceConfig, PhysicsParams


class PhysicsModel(BaseModel):
    gamma: float = 1.0
    tau_2q: float = 1e-3
    alpha: float = 1e-2
    dnbar_shuttle: float = 0.1
    dnbar_swap: float = 0.0
    dnbar_split: float = 0.0
    nbar_initial: float = 0.0


class DeviceModel(BaseModel):
    n_traps: int = 2
    trap_capacity: int = 15
    comm_capacity: int = 2
    physics: PhysicsModel = Field(default_factory=PhysicsModel)

    def to_config(self) -> DeviceConfig:
        return DeviceConfig(
            n_traps=self.n_traps,
            trap_capacity=self.trap_capacity,
            comm_capacity=self.comm_capacity,
            physics=PhysicsParams(**self.physics.model_dump()),
        )


class ProgramIn(BaseModel):
    id: str
    text: str  # .qprog format


class TenantResult(BaseModel):
    fidelity: float
    gate_fidelities: list[float]


class CompileRequest(BaseModel):
    device: DeviceModel = Field(default_factory=DeviceModel)
    programs: list[ProgramIn]
    mapping: Literal["greedy", "random", "hybrid"] = "greedy"
    seed: Optional[int] = None
    random_scope: Literal["segment", "trap"] = "segment"
    hybrid_draws: int = 1
    include_trace: bool = False


class TraceRow(BaseModel):
    tick: int
    kind: str
    tenant: str
    gate_index: int
    ion: str
    src_trap: Optional[int] = None
    dst_trap: Optional[int] = None
    nbar_dst: Optional[float] = None
    fidelity: Optional[float] = None


class CompileResponse(BaseModel):
    schema_version: str = Field(alias="schema")
    shuttle_count: int
    clamp_count: int
    n_events: int
    tenants: list[str]
    per_program: dict[str, TenantResult]
    initial_layout: list[list[str]]
    final_layout: list[list[str]]
    final_nbar: list[float]
    mapping_policy: str
    hybrid: Optional[dict] = None
    trace: Optional[list[TraceRow]] = None

    model_config = {"populate_by_name": True}


class SystematicAttackRequest(BaseModel):
    trap_capacity: int = 15
    comm_capacity: int = 2
    assumed_victim_size: int
    sc_block_length: int = 80
    seed: int = 0
    adversary_size: Optional[int] = None


class AttackResponse(BaseModel):
    program: str  # .qprog text
    sidecar: dict


class RandomAttackRequest(BaseModel):
    device: DeviceModel = Field(default_factory=DeviceModel)
    candidates: int = 1000
    victim_sizes: list[int]
    seed: int = 0
    n_qubits: Optional[int] = None
    include_matrix: bool = False


class RandomAttackResponse(BaseModel):
    program: str
    sidecar: dict
    stats: dict


class PruneRequest(BaseModel):
    device: DeviceModel = Field(default_factory=DeviceModel)
    program: str
    metric: Literal["single", "mean"] = "single"
    victim_sizes: list[int] = Field(default_factory=lambda: [12])
    seed: int = 0


class PruneResponse(BaseModel):
    program: str
    baseline_shuttles: float
    pruned_shuttles: float
    removed_gates: int
    kept_gates: int
    log: list[dict]


class SweepRequest(BaseModel):
    device: DeviceModel = Field(default_factory=DeviceModel)
    method: Literal["systematic", "random"] = "systematic"
    sizes: list[int]
    sc_length: int = 80
    seed: int = 0
    candidates: int = 100


class HybridRequest(BaseModel):
    device: DeviceModel = Field(default_factory=DeviceModel)
    programs: list[ProgramIn]
    seed: int = 0
    draws: int = 1


class PadRequest(BaseModel):
    program: str
    target_size: int
    id: str = "victim"


class PadResponse(BaseModel):
    program: str
    n_qubits: int
    dummy_qubits: int


class AdmitRequest(BaseModel):
    device: DeviceModel = Field(default_factory=DeviceModel)
    programs: list[ProgramIn]
    max_shuttles: int


class BenchRequest(BaseModel):
    kind: Literal["qft", "adder", "qaoa"]
    n: int
    density: float = 0.5
    seed: int = 0


class ReductionRequest(BaseModel):
    device: DeviceModel = Field(default_factory=DeviceModel)
    victim: ProgramIn
    attack: ProgramIn
    policy: Literal["greedy", "random"] = "greedy"
    seed: Optional[int] = None


class HealthResponse(BaseModel):
    status: str
    version: str
