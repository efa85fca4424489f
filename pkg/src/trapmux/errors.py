"""Exception hierarchy shared across the package.

Every domain failure raises a TrapmuxError subclass so the service layer and
the CLI can map them to a single error channel (HTTP 400 / exit code 1)
without string matching.
"""


class TrapmuxError(Exception):
    """Base class for all domain errors."""

    kind = "domain"


class ProgramParseError(TrapmuxError):
    """Malformed program text. Carries the 1-based line number."""

    kind = "parse"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GateError(TrapmuxError):
    """Invalid gate construction (duplicate or out-of-range qubits)."""

    kind = "gate"


class ConfigError(TrapmuxError):
    """Invalid device configuration."""

    kind = "config"


class CapacityError(TrapmuxError):
    """Programs do not fit the requested traps/slots."""

    kind = "capacity"


class UnknownIonError(TrapmuxError):
    """Lookup of an ion that is not on the machine."""

    kind = "unknown-ion"


class ShuttleBlockedError(TrapmuxError):
    """Destination trap has no excess capacity for an incoming ion."""

    kind = "shuttle-blocked"


class SchedulingError(TrapmuxError):
    """Scheduler invoked in an inconsistent way (e.g. shuttle between
    co-located ions)."""

    kind = "scheduling"


class GenerationError(TrapmuxError):
    """Adversarial program generation could not proceed (pair exhaustion)."""

    kind = "generation"
