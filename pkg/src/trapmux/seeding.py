"""Deterministic seed derivation.

All randomness in the package flows through `random.Random` instances whose
seeds are either user-provided or derived from a user seed plus a string
label.  Derivation hashes `"<seed>/<label>/<label>..."` with SHA-256 and
takes the first 8 bytes, so independent sub-tasks (sweep cells, candidate
indices, victim sizes) get decorrelated streams while remaining reproducible
and order-independent.
"""

import hashlib
import random


def derive_seed(seed: int, *labels: object) -> int:
    """Derive a child seed from `seed` and a label path."""
    key = "/".join([str(seed), *(str(x) for x in labels)])
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def rng_for(seed: int, *labels: object) -> random.Random:
    """Fresh RNG seeded from `derive_seed(seed, *labels)`."""
    return random.Random(derive_seed(seed, *labels))
