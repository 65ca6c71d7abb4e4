"""Closed geodesics by curve shortening and min-max sweep-outs."""

from ._core import (
    Error,
    MeshSpace,
    Space,
    SphereSpace,
    TorusSpace,
    certify,
    run,
    shorten,
)

__all__ = [
    "Error",
    "MeshSpace",
    "Space",
    "SphereSpace",
    "TorusSpace",
    "certify",
    "run",
    "shorten",
]
__version__ = "0.1.0"
