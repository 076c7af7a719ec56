"""Ziv-Zakai MSE lower bounds for joint distance/tilt estimation.

The detection statistic behind the bound needs, for every hypothesis
offset, an integral of the squared channel mismatch along the array. The
on-axis channel magnitude is linear in (tilt, transverse), so that
integral splits into ten tilt-independent y-integrals; the engine
computes those once per distance offset and assembles the
tilt/search/SNR dependence algebraically. Outer offset integrals run on
log-spaced panels because the integrand support shrinks like 1/SNR.

Valley-filling is omitted throughout, a known slackening that does not
affect the asymptotic regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvariantViolation, QuadratureFailure
from .geometry import ArrayGeometry, UniformPrior, Wave
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, integrate, q_function

_TRUNCATE_REL = 1e-12
_DELTA_FLOOR_REL = 1e-9
_MAX_FAMILY_PANELS = 1 << 14


@dataclass(frozen=True)
class HypothesisPair:
    """A hypothesis point (theta_z, theta_t) and its nonnegative offset
    (delta_z, delta_t)."""
    theta_z: float
    theta_t: float
    delta_z: float
    delta_t: float

    def __post_init__(self):
        if self.theta_z <= 0 or self.delta_z < 0 or self.delta_t < 0:
            raise InvariantViolation("need theta_z > 0 and offsets >= 0")
        if not (0 <= self.theta_t and self.theta_t + self.delta_t < 1):
            raise InvariantViolation("tilt hypotheses must stay inside [0, 1)")


@dataclass(frozen=True)
class ZZBGrid:
    n_delta: int = 64
    n_theta_z: int = 64
    n_theta_t: int = 64
    n_max_search: int = 16
    mu_tol: float = 1e-6

    def __post_init__(self):
        if min(self.n_delta, self.n_theta_z, self.n_theta_t) < 2:
            raise InvariantViolation("grid sizes must be >= 2")
        if self.n_max_search < 1:
            raise InvariantViolation("n_max_search must be >= 1")
        if self.mu_tol <= 0:
            raise InvariantViolation("mu_tol must be > 0")


DEFAULT_GRID = ZZBGrid()


def _signed_amp(z, t, y):
    rr = np.sqrt(y * y + z * z)
    return np.sqrt(z) * (y * t + z * np.sqrt(1.0 - t * t)) / rr ** 2.5


def ambiguity_function(pair: HypothesisPair, y_r, wave: Wave):
    """Squared channel mismatch between the two hypotheses at array
    coordinate y_r. Equals |h1 - h0|^2."""
    y = np.asarray(y_r, dtype=float)
    z0, z1 = pair.theta_z, pair.theta_z + pair.delta_z
    m0 = np.abs(_signed_amp(z0, pair.theta_t, y))
    m1 = np.abs(_signed_amp(z1, pair.theta_t + pair.delta_t, y))
    dr = np.sqrt(y * y + z1 * z1) - np.sqrt(y * y + z0 * z0)
    return (m1 * m1 + m0 * m0
            - 2.0 * m1 * m0 * np.cos(wave.wavenumber * dr))[()]


def mu_L(pair: HypothesisPair, snr: float, geom: ArrayGeometry, wave: Wave,
         spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Mean log-likelihood-ratio under the continuous-array approximation:
    snr * pitch * integral of the ambiguity function along the strip."""
    if snr < 0:
        raise InvariantViolation("snr must be >= 0")
    if snr == 0 or (pair.delta_z == 0 and pair.delta_t == 0):
        return 0.0
    val = integrate(lambda y: ambiguity_function(pair, y, wave),
                    0.0, geom.aperture, spec)
    return snr * geom.pitch * val


def p_min(pair: HypothesisPair, snr: float, geom: ArrayGeometry,
          wave: Wave) -> float:
    """Minimum binary detection error between the two hypotheses under
    equal priors."""
    return float(q_function(math.sqrt(mu_L(pair, snr, geom, wave) / 2.0)))


def p_min_general(mu, prob0: float = 0.5, prob1: float = 0.5):
    """Two-term minimum error probability for unequal hypothesis priors.
    Collapses to Q(sqrt(mu/2)) when the priors match."""
    mu = np.asarray(mu, dtype=float)
    if np.any(mu < 0):
        raise InvariantViolation("mu must be >= 0")
    ratio = math.log(prob1 / prob0)
    s = np.sqrt(2.0 * mu)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = (prob0 * q_function((mu - ratio) / s)
               + prob1 * q_function((mu + ratio) / s))
    return np.where(mu > 0, val, min(prob0, prob1))[()]


@lru_cache(maxsize=8)
def _gl(order: int):
    return np.polynomial.legendre.leggauss(order)


def _panel_rule(edges: np.ndarray, order: int):
    xi, wi = _gl(order)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xi[None, :]).ravel()
    weights = (half[:, None] * wi[None, :]).ravel()
    return nodes, weights


def _log_panel_rule(lo: float, hi: float, n_total: int):
    """Quadrature rule for a smooth-in-log integrand on [lo, hi]:
    log-spaced panel edges, 4-point Gauss-Legendre per panel."""
    n_panels = max(1, n_total // 4)
    edges = np.exp(np.linspace(math.log(lo), math.log(hi), n_panels + 1))
    return _panel_rule(edges, 4)


def _midpoints(lo: float, hi: float, n: int):
    return lo + (np.arange(n) + 0.5) * ((hi - lo) / n)


def _family_eval(theta_z: np.ndarray, delta_z: float, geom: ArrayGeometry,
                 wave: Wave, n_panels: int):
    y, w = _panel_rule(np.linspace(0.0, geom.aperture, n_panels + 1), 8)
    z0 = theta_z[:, None]
    z1 = z0 + delta_z
    y = y[None, :]
    r0 = np.sqrt(y * y + z0 * z0)
    r1 = np.sqrt(y * y + z1 * z1)
    a0 = np.sqrt(z0) * y / r0 ** 2.5
    b0 = z0 ** 1.5 / r0 ** 2.5
    a1 = np.sqrt(z1) * y / r1 ** 2.5
    b1 = z1 ** 1.5 / r1 ** 2.5
    c = np.cos(wave.wavenumber * (r1 - r0))
    parts = (a0 * a0, a0 * b0, b0 * b0,
             a1 * a1, a1 * b1, b1 * b1,
             a0 * a1 * c, a0 * b1 * c, b0 * a1 * c, b0 * b1 * c)
    return np.stack([p @ w for p in parts])


def _families(theta_z: np.ndarray, delta_z: float, geom: ArrayGeometry,
              wave: Wave, mu_tol: float):
    """Ten y-integrals per hypothesis distance, refined until stable."""
    zmin = float(theta_z.min())
    geom_factor = 1.0 - zmin / math.hypot(zmin, geom.aperture)
    cycles = wave.wavenumber * delta_z * geom_factor / (2.0 * math.pi)
    n_panels = max(8, int(math.ceil(2.0 * cycles)))
    vals = _family_eval(theta_z, delta_z, geom, wave, n_panels)
    while True:
        if 2 * n_panels > _MAX_FAMILY_PANELS:
            raise QuadratureFailure(
                f"channel-mismatch integrals not converged at {n_panels} panels")
        n_panels *= 2
        refined = _family_eval(theta_z, delta_z, geom, wave, n_panels)
        scale = np.abs(refined).max() + 1e-300
        if np.abs(refined - vals).max() <= mu_tol * scale:
            return refined
        vals = refined


def _mu_over_tilts(fams: np.ndarray, theta_t: np.ndarray, delta_t: float):
    """Assemble mu/(snr*pitch) on the (theta_z, theta_t) tensor grid."""
    a0sq, a0b0, b0sq, a1sq, a1b1, b1sq, paa, qab, rba, sbb = fams[:, :, None]
    t0 = theta_t[None, :]
    s0 = np.sqrt(1.0 - t0 * t0)
    t1 = t0 + delta_t
    s1 = np.sqrt(1.0 - t1 * t1)
    e0 = a0sq * t0 * t0 + 2.0 * a0b0 * t0 * s0 + b0sq * s0 * s0
    e1 = a1sq * t1 * t1 + 2.0 * a1b1 * t1 * s1 + b1sq * s1 * s1
    cross = paa * t0 * t1 + qab * t0 * s1 + rba * s0 * t1 + sbb * s0 * s1
    return e0 + e1 - 2.0 * cross


def _q_box_integral(fams, prior, snr, geom, delta_z, delta_t, grid):
    """Integral of the detection error over the admissible hypothesis box."""
    theta_t = _midpoints(0.0, 1.0 - delta_t, grid.n_theta_t)
    mu = snr * geom.pitch * _mu_over_tilts(fams, theta_t, delta_t)
    cell = ((prior.span - delta_z) / grid.n_theta_z) * ((1.0 - delta_t) / grid.n_theta_t)
    return float(q_function(np.sqrt(np.maximum(mu, 0.0) / 2.0)).sum()) * cell


def zzb_z(prior: UniformPrior, snr: float, geom: ArrayGeometry, wave: Wave,
          grid: ZZBGrid = DEFAULT_GRID) -> float:
    """MSE lower bound on the source distance (m^2)."""
    if snr < 0:
        raise InvariantViolation("snr must be >= 0")
    span = prior.span
    nodes, weights = _log_panel_rule(span * _DELTA_FLOOR_REL, span, grid.n_delta)
    search = np.linspace(0.0, 1.0, grid.n_max_search, endpoint=False)
    total = 0.0
    peak = 0.0
    for dz, w in zip(nodes, weights):
        theta_z = _midpoints(prior.z_min, prior.z_max - dz, grid.n_theta_z)
        fams = _families(theta_z, dz, geom, wave, grid.mu_tol)
        bracket = max(_q_box_integral(fams, prior, snr, geom, dz, dt, grid)
                      for dt in search)
        total += w * dz * bracket
        peak = max(peak, bracket)
        if bracket < _TRUNCATE_REL * peak:
            break
    return total / span


def zzb_t(prior: UniformPrior, snr: float, geom: ArrayGeometry, wave: Wave,
          grid: ZZBGrid = DEFAULT_GRID) -> float:
    """MSE lower bound on the tilt (dimensionless^2)."""
    if snr < 0:
        raise InvariantViolation("snr must be >= 0")
    span = prior.span
    nodes, weights = _log_panel_rule(_DELTA_FLOOR_REL, 1.0, grid.n_delta)
    search = np.linspace(0.0, span, grid.n_max_search, endpoint=False)
    fams_cache = {}
    total = 0.0
    peak = 0.0
    for dt, w in zip(nodes, weights):
        bracket = 0.0
        for j, dz in enumerate(search):
            if j not in fams_cache:
                theta_z = _midpoints(prior.z_min, prior.z_max - dz, grid.n_theta_z)
                fams_cache[j] = (_families(theta_z, dz, geom, wave, grid.mu_tol), dz)
            fams, dzv = fams_cache[j]
            bracket = max(bracket, _q_box_integral(
                fams, prior, snr, geom, dzv, dt, grid))
        total += w * dt * bracket
        peak = max(peak, bracket)
        if bracket < _TRUNCATE_REL * peak:
            break
    return total / span


def zzb_asymptotic(prior: UniformPrior):
    """Zero-SNR (or zero-aperture) limits: the prior variances."""
    return prior.span ** 2 / 12.0, 1.0 / 12.0


def mu_L_ao(z_t, theta_t, delta_t, snr: float, geom: ArrayGeometry):
    """Closed-form detection statistic for tilt-only hypotheses (no
    distance offset). Wavelength-free because the phase cancels exactly.

    An infinite aperture evaluates the limiting form. Broadcasts over
    array inputs.
    """
    z = np.asarray(z_t, dtype=float)
    t0 = np.asarray(theta_t, dtype=float)
    dt = np.asarray(delta_t, dtype=float)
    if np.any(z <= 0):
        raise InvariantViolation("z_t must be > 0")
    if np.any(t0 < 0) or np.any(t0 + dt > 1) or np.any(dt < 0):
        raise InvariantViolation("tilt hypotheses must stay inside [0, 1]")
    ft = np.sqrt(1.0 - t0 * t0) - np.sqrt(1.0 - (t0 + dt) ** 2)
    if math.isinf(geom.aperture):
        return (snr * geom.pitch / (3.0 * z) * ((dt - ft) ** 2 + ft * ft))[()]
    tau = geom.aperture / z
    p32 = (1.0 + tau * tau) ** 1.5
    m2 = tau ** 3 / (3.0 * p32)
    m1 = (1.0 - 1.0 / p32) / 3.0
    m0 = tau * (2.0 * tau * tau + 3.0) / (3.0 * p32)
    return (snr * geom.pitch / z
            * (dt * dt * m2 - 2.0 * dt * ft * m1 + ft * ft * m0))[()]


def zzb_ao_t(prior: UniformPrior, snr: float, geom: ArrayGeometry,
             grid: ZZBGrid = DEFAULT_GRID) -> float:
    """Tilt bound with the distance treated as a random nuisance.

    Grids match the joint zzb_t at zero distance offset, so the ordering
    zzb_t >= zzb_ao_t survives discretization.
    """
    if snr < 0:
        raise InvariantViolation("snr must be >= 0")
    nodes, weights = _log_panel_rule(_DELTA_FLOOR_REL, 1.0, grid.n_delta)
    z_mid = _midpoints(prior.z_min, prior.z_max, grid.n_theta_z)[:, None]
    total = 0.0
    peak = 0.0
    for dt, w in zip(nodes, weights):
        theta_t = _midpoints(0.0, 1.0 - dt, grid.n_theta_t)[None, :]
        mu = mu_L_ao(z_mid, theta_t, dt, snr, geom)
        inner = q_function(np.sqrt(mu / 2.0)).mean(axis=0)
        bracket = float(inner.sum()) * ((1.0 - dt) / grid.n_theta_t)
        total += w * dt * bracket
        peak = max(peak, bracket)
        if bracket < _TRUNCATE_REL * peak:
            break
    return total
