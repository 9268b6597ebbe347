"""Weighted Fock spaces, reproducing kernels and linear complex ODEs."""

import json as _json

from ._fockde import (
    EntireFunction,
    KernelBasis,
    SchemaError,
    WeightProfile,
    battery_case_names,
    laplacian_radial,
    reproduce_check,
    sup_ratio,
    tau,
)
from . import _fockde

__version__ = "0.1.0"


def _text(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def function(spec):
    """Entire function from a JSON-style dict, e.g. {"type": "named", "name": "cos"}."""
    return EntireFunction.from_json(_text(spec))


def weight(spec):
    """Weight profile from a JSON-style dict, e.g. {"kind": "power", "alpha": 3}."""
    return WeightProfile.from_json(_text(spec))


def classify_weight(w, r_max=100.0, samples=64):
    return _json.loads(_fockde.classify_weight(w, r_max, samples))


def weighted_norm(f, w=None, p=2.0, q=0.0, m=0, quadrature=None):
    w = WeightProfile.classical_gaussian() if w is None else w
    return _json.loads(_fockde.weighted_norm(f, w, p, q, m, _text(quadrature) if quadrature else ""))


def taylor_solution(problem, N):
    return _fockde.taylor_solution(_text(problem), N)


def ray_values(problem, theta, radii, tol=1e-10):
    return _fockde.ray_values(_text(problem), theta, list(radii), tol)


def run_cli(*args):
    """Runs the command-line front-end in process; returns (exit_code, stdout, stderr)."""
    return _fockde.run_cli([str(a) for a in args])


__all__ = [
    "EntireFunction",
    "KernelBasis",
    "SchemaError",
    "WeightProfile",
    "battery_case_names",
    "classify_weight",
    "function",
    "laplacian_radial",
    "ray_values",
    "reproduce_check",
    "run_cli",
    "sup_ratio",
    "tau",
    "taylor_solution",
    "weight",
    "weighted_norm",
]
