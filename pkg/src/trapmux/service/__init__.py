"""HTTP service exposing the compiler, attack generators and defenses."""

from .app import create_app  # noqa: F401
