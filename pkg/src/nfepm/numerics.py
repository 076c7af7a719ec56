"""Shared numeric kernels: 1-D adaptive quadrature, Gaussian tail function,
deterministic tensor-grid expectations, and splittable RNG streams."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as _sciint
from scipy.special import erfc

from .errors import InvariantViolation, QuadratureFailure

# Upper cap applied to every t_z grid so 1/sqrt(1 - t_z^2) stays finite.
TZ_EPS = 1e-4


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-11
    rel_tol: float = 1e-11
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise InvariantViolation("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise InvariantViolation("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()


def integrate(f: Callable[[float], float], a: float, b: float,
              spec: QuadratureSpec = DEFAULT_QUADRATURE,
              with_error: bool = False):
    """Adaptive quadrature of a real-valued f over [a, b].

    Returns the estimate, or (estimate, error_estimate) when with_error is
    set. Raises QuadratureFailure if the subdivision budget is exhausted
    before the tolerances are met.
    """
    if not a <= b:
        raise InvariantViolation(f"integration bounds out of order: ({a}, {b})")
    out = _sciint.quad(f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                       limit=spec.max_subdivisions, full_output=1)
    if len(out) > 3:
        raise QuadratureFailure(
            f"quadrature on [{a}, {b}] did not converge: {out[3]} "
            f"(estimate {out[0]!r}, error {out[1]!r})")
    return (out[0], out[1]) if with_error else out[0]


def q_function(x):
    """Standard normal tail probability Q(x) = P(Z > x). Vectorized."""
    return 0.5 * erfc(x / np.sqrt(2.0))


def expect_uniform(f, prior, n_z: int = 64, n_t: int = 64) -> float:
    """Midpoint tensor-grid average of f(z, t) over the prior box.

    z runs over [z_min, z_max]; t over [0, 1 - TZ_EPS]. f must broadcast
    over numpy arrays.
    """
    if n_z < 1 or n_t < 1:
        raise InvariantViolation("expectation grid sizes must be >= 1")
    z = prior.z_min + (np.arange(n_z) + 0.5) * (prior.span / n_z)
    t = (np.arange(n_t) + 0.5) * ((1.0 - TZ_EPS) / n_t)
    zz, tt = np.meshgrid(z, t, indexing="ij")
    vals = np.broadcast_to(np.asarray(f(zz, tt), dtype=float), zz.shape)
    return float(vals.mean())


def stream(seed: int, *indices: int) -> np.random.Generator:
    """Independent generator for (seed, indices), stable across runs."""
    key = tuple(int(i) for i in indices)
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=key))
