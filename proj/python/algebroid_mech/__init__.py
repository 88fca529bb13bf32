"""Hamiltonian mechanics and Hamilton-Jacobi checks on skew-symmetric algebroids."""

import json

from ._core import (
    ConstructionError,
    DomainError,
    Error,
    GallerySystem,
    NumericFailure,
    UsageError,
    default_params,
    gallery_ids,
    instantiate,
    lambert_w0,
    run_cli,
)

__all__ = [
    "ConstructionError",
    "DomainError",
    "Error",
    "GallerySystem",
    "NumericFailure",
    "UsageError",
    "cli",
    "default_params",
    "gallery_ids",
    "instantiate",
    "lambert_w0",
    "run_cli",
]


def cli(*args):
    """Run a JSON-producing command and return (exit_code, parsed report)."""
    code, out, err = run_cli([str(a) for a in args])
    if code == 2:
        raise UsageError(err.strip())
    return code, json.loads(out)
