"""trapmux: multi-trap trapped-ion compiler/scheduler with multi-programming,
shuttle-heavy workload generators and scheduling defenses."""

__version__ = "0.1.0"

from .circuit import (  # noqa: F401
    Gate,
    GateKind,
    Program,
    concat,
    edge_weights,
    emit_program,
    ms,
    parse_program,
    vz,
)
from .device import DeviceConfig, IonId, MachineState, PhysicsParams  # noqa: F401
from .mapper import greedy_map, place_multi, random_map  # noqa: F401
from .scheduler import (  # noqa: F401
    Event,
    EventKind,
    Schedule,
    compile_programs,
    count_shuttles,
    replay,
    shuttle_direction,
)
from .fidelity import (  # noqa: F401
    ChainEnergy,
    apply_heating,
    gate_fidelity,
    program_fidelity,
    scale_factor,
)
from .run import compile_corun, compile_solo  # noqa: F401
