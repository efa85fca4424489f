"""Adversarial shuttle-heavy program generators."""

from .systematic import (  # noqa: F401
    AttackSpec,
    SystematicAttack,
    assemble,
    assemble_detailed,
    bridging_gate,
    build_imc,
    build_sc,
)
from .random_search import (  # noqa: F401
    PruneStep,
    RandomSearchStats,
    gen_candidate,
    prune,
    search_best,
)
