"""Fisher information and expected Cramer-Rao bounds for the on-axis
channel.

The FIM entries are integrals along the array of products of channel
derivatives. Both routes are provided: closed forms built from twelve
coefficient functions of the aspect ratio tau = aperture/distance (the
most transcription-sensitive code in the package, so each has a
quadrature unit test), and direct numerical integration of the
derivative products as an oracle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .channel import AxialPose
from .errors import AttitudeSingularity, InvariantViolation, SingularFIM
from .geometry import ArrayGeometry, UniformPrior, Wave
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, expect_uniform, integrate

_TY_SQ_MIN = 1e-12
_TAU_LIMIT = 1e9


def _limited(tau, formula, limit: float):
    """Evaluate a tau coefficient, switching to its tau->inf limit where the
    polynomial ratios would lose meaning (or overflow)."""
    t = np.asarray(tau, dtype=float)
    if np.any(t < 0):
        raise InvariantViolation("tau must be >= 0")
    big = (t > _TAU_LIMIT) | np.isinf(t)
    safe = np.where(big, 1.0, t)
    return np.where(big, limit, formula(safe))[()]


def ftau1(tau):
    return _limited(tau, lambda t: (
        (2 * t ** 8 + 8 * t ** 6 + 12 * t ** 4 + 8 * t ** 2 + 2)
        / (7 * (t * t + 1) ** 4)
        - (7 * t ** 4 - 14 * t * t + 4) / (14 * (t * t + 1) ** 3.5)), 2 / 7)


def ftau2(tau):
    return _limited(tau, lambda t: (
        (19 * t ** 7 + 56 * t ** 5 + 112 * t ** 3)
        / (84 * (t * t + 1) ** 3.5)), 19 / 84)


def ftau3(tau):
    return _limited(tau, lambda t: (
        (10 * t ** 7 + 35 * t ** 5 + 28 * t ** 3 + 28 * t)
        / (28 * (t * t + 1) ** 3.5)), 5 / 14)


def ftau4(tau):
    return _limited(tau, lambda t: 0.4 - 0.4 / (t * t + 1) ** 2.5, 2 / 5)


def ftau5(tau):
    return _limited(tau, lambda t: (
        t ** 3 * (2 * t * t + 5) / (15 * (t * t + 1) ** 2.5)), 2 / 15)


def ftau6(tau):
    return _limited(tau, lambda t: (
        (8 * t ** 5 + 20 * t ** 3 + 15 * t) / (15 * (t * t + 1) ** 2.5)), 8 / 15)


def ftau7(tau):
    return _limited(tau, lambda t: (t ** 3 + 3 * t) / (3 * (t * t + 1) ** 1.5), 1 / 3)


def ftau8(tau):
    return _limited(tau, lambda t: 2 / (3 * (t * t + 1) ** 1.5) - 2 / 3, -2 / 3)


def ftau9(tau):
    return _limited(tau, lambda t: t ** 3 / (3 * (t * t + 1) ** 1.5), 1 / 3)


def ftau10(tau):
    return _limited(tau, lambda t: (
        (t * t - 2) / (6 * (t * t + 1) ** 2.5)
        + (t ** 4 + 2 * t * t + 1) / (3 * (t * t + 1) ** 2)), 1 / 3)


def ftau11(tau):
    return _limited(tau, lambda t: (
        (t ** 5 + t ** 3 + 6 * t) / (6 * (t * t + 1) ** 2.5)), 1 / 6)


def ftau12(tau):
    return _limited(tau, lambda t: -t * t / (2 * (t * t + 1) ** 2.5), 0.0)


@dataclass(frozen=True)
class FisherInfo:
    """Integral factors plus the assembled 2x2 information entries."""
    i_zz1: float
    i_zz2: float
    i_tt: float
    i_zt: float
    f_zz: float
    f_tt: float
    f_zt: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.f_zz, self.f_zt], [self.f_zt, self.f_tt]])

    @property
    def det(self) -> float:
        return self.f_zz * self.f_tt - self.f_zt ** 2


def _assemble(i_zz1, i_zz2, i_tt, i_zt, snr, geom, wave) -> FisherInfo:
    scale = 2.0 * snr * geom.pitch
    k = wave.wavenumber
    return FisherInfo(float(i_zz1), float(i_zz2), float(i_tt), float(i_zt),
                      f_zz=scale * float(i_zz1 + k * k * i_zz2),
                      f_tt=scale * float(i_tt),
                      f_zt=scale * float(i_zt))


def _factors(z, t_z, geom: ArrayGeometry):
    """The four information integrals per unit (2*SNR*pitch), vectorized."""
    z = np.asarray(z, dtype=float)
    tz = np.asarray(t_z, dtype=float)
    if np.any(z <= 0):
        raise InvariantViolation("distance must be > 0")
    ty_sq = 1.0 - tz * tz
    if np.any(ty_sq < _TY_SQ_MIN):
        raise AttitudeSingularity("t_z too close to 1 for the tilt divisions")
    ty = np.sqrt(ty_sq)
    tau = geom.aperture / z
    i_zz1 = (tz * ty * ftau1(tau) + tz * tz * ftau2(tau)
             + ty_sq * ftau3(tau)) / z ** 3
    i_zz2 = (tz * ty * ftau4(tau) + tz * tz * ftau5(tau)
             + ty_sq * ftau6(tau)) / z
    i_tt = ((tz * tz / ty_sq) * ftau7(tau) + (tz / ty) * ftau8(tau)
            + ftau9(tau) / ty_sq) / z
    i_zt = ((tz * tz / ty) * ftau10(tau) + tz * ftau11(tau)
            + ty * ftau12(tau)) / z ** 2
    return i_zz1, i_zz2, i_tt, i_zt


def fim_closed(pose: AxialPose, snr: float, geom: ArrayGeometry,
               wave: Wave) -> FisherInfo:
    """Fisher information from the tau closed forms."""
    if snr < 0:
        raise InvariantViolation("snr must be >= 0")
    return _assemble(*_factors(pose.distance, pose.tilt, geom),
                     snr, geom, wave)


def channel_deriv_z(pose: AxialPose, y_r, wave: Wave):
    """Derivative of the on-axis channel with respect to the source
    distance. Complex; broadcasts over y_r."""
    y = np.asarray(y_r, dtype=float)
    z, t = pose.distance, pose.tilt
    ty = pose.transverse
    r = np.sqrt(y * y + z * z)
    jkr = 1j * wave.wavenumber * r
    l1 = 2.0 * z * z * (2.0 - jkr)
    l2 = 2.0 * z * z * (1.0 - jkr)
    num = t * y * (y * y - l1) + ty * z * (3.0 * y * y - l2)
    return (num / (2.0 * math.sqrt(z) * r ** 4.5) * np.exp(jkr))[()]


def channel_deriv_t(pose: AxialPose, y_r, wave: Wave):
    """Derivative of the on-axis channel with respect to the tilt
    component (with the transverse component eliminated)."""
    y = np.asarray(y_r, dtype=float)
    z, t = pose.distance, pose.tilt
    if 1.0 - t * t < _TY_SQ_MIN:
        raise AttitudeSingularity("t_z too close to 1 for the tilt derivative")
    ty = pose.transverse
    r = np.sqrt(y * y + z * z)
    jkr = 1j * wave.wavenumber * r
    return ((y - z * t / ty) * math.sqrt(z) / r ** 2.5 * np.exp(jkr))[()]


def fim_quadrature(pose: AxialPose, snr: float, geom: ArrayGeometry,
                   wave: Wave,
                   spec: QuadratureSpec = DEFAULT_QUADRATURE) -> FisherInfo:
    """Fisher information by numerical integration of the derivative
    products along the strip; the oracle for fim_closed."""
    if snr < 0:
        raise InvariantViolation("snr must be >= 0")
    z, tz = pose.distance, pose.tilt
    if 1.0 - tz * tz < _TY_SQ_MIN:
        raise AttitudeSingularity("t_z too close to 1 for the tilt divisions")
    ty = pose.transverse
    c = tz / ty

    def r2(y):
        return y * y + z * z

    def num_z(y):
        # real part of the distance-derivative numerator
        return (tz * y * (y * y - 4.0 * z * z)
                + ty * z * (3.0 * y * y - 2.0 * z * z))

    i_zz1 = integrate(lambda y: num_z(y) ** 2 / (4.0 * z * r2(y) ** 4.5),
                      0.0, geom.aperture, spec)
    i_zz2 = integrate(lambda y: z ** 3 * (tz * y + ty * z) ** 2 / r2(y) ** 3.5,
                      0.0, geom.aperture, spec)
    i_tt = integrate(lambda y: z * (y - z * c) ** 2 / r2(y) ** 2.5,
                     0.0, geom.aperture, spec)
    i_zt = integrate(lambda y: num_z(y) * (y - z * c) / (2.0 * r2(y) ** 3.5),
                     0.0, geom.aperture, spec)
    return _assemble(i_zz1, i_zz2, i_tt, i_zt, snr, geom, wave)


def _grid_sizes(grid):
    if isinstance(grid, int):
        return grid, grid
    n_z, n_t = grid
    return int(n_z), int(n_t)


def ecrb(prior: UniformPrior, snr: float, geom: ArrayGeometry, wave: Wave,
         grid=(64, 64), on_singular: str = "raise"):
    """Expected CRBs (distance m^2, tilt dimensionless^2) over the prior.

    on_singular: "raise" aborts at the first prior sample with a singular
    information matrix; "skip" drops such samples from the average and
    warns with the count.
    """
    if snr <= 0:
        raise InvariantViolation("snr must be > 0")
    if on_singular not in ("raise", "skip"):
        raise InvariantViolation(f"unknown on_singular mode: {on_singular!r}")
    n_z, n_t = _grid_sizes(grid)
    k = wave.wavenumber

    def ratios(z, t):
        i_zz1, i_zz2, i_tt, i_zt = _factors(z, t, geom)
        i_zz = i_zz1 + k * k * i_zz2
        det = i_zz * i_tt - i_zt * i_zt
        bad = det <= 0
        if np.any(bad) and on_singular == "raise":
            iz, it = np.argwhere(bad)[0]
            raise SingularFIM(
                f"information matrix singular at z_t={z[iz, it]!r}, "
                f"t_z={t[iz, it]!r}")
        safe = np.where(bad, 1.0, det)
        return bad, np.where(bad, 0.0, i_tt / safe), np.where(bad, 0.0, i_zz / safe)

    def mean_of(idx):
        return expect_uniform(lambda z, t: ratios(z, t)[idx], prior, n_z, n_t)

    pref = 1.0 / (2.0 * snr * geom.pitch)
    if on_singular == "raise":
        return pref * mean_of(1), pref * mean_of(2)
    ok_frac = 1.0 - expect_uniform(lambda z, t: ratios(z, t)[0] * 1.0,
                                   prior, n_z, n_t)
    if ok_frac <= 0:
        raise SingularFIM("information matrix singular on the whole prior grid")
    if ok_frac < 1.0:
        n_bad = round((1.0 - ok_frac) * n_z * n_t)
        warnings.warn(f"skipped {n_bad} singular prior samples", stacklevel=2)
    return (pref * mean_of(1) / ok_frac, pref * mean_of(2) / ok_frac)


def ecrb_asymptotic(prior: UniformPrior, snr: float, geom: ArrayGeometry,
                    wave: Wave, large_z: bool = False):
    """Infinite-aperture, zero-tilt limits of the expected CRBs. With
    large_z the distance bound uses the further z_t >> lambda
    simplification."""
    if snr <= 0:
        raise InvariantViolation("snr must be > 0")
    pref = 1.0 / (2.0 * snr * geom.pitch)
    mean_z = 0.5 * (prior.z_min + prior.z_max)
    bound_t = 3.0 * pref * mean_z
    if large_z:
        lam = wave.wavelength
        return 15.0 * lam * lam * mean_z / (
            64.0 * math.pi ** 2 * snr * geom.pitch), bound_t
    k = wave.wavenumber
    bound_z = pref * expect_uniform(
        lambda z, t: 210.0 * z ** 3 / (112.0 * k * k * z * z + 75.0), prior)
    return bound_z, bound_t


def ecrb_ao(prior: UniformPrior, snr: float, geom: ArrayGeometry, wave: Wave,
            grid=(64, 64)) -> float:
    """Expected CRB on the tilt when the distance is known per sample.

    Wavelength does not enter (the tilt information carries no phase
    term); the wave argument is kept for interface symmetry with ecrb.
    An infinite aperture uses the limiting coefficient values.
    """
    if snr <= 0:
        raise InvariantViolation("snr must be > 0")
    del wave
    n_z, n_t = _grid_sizes(grid)

    def inv_itt(z, t):
        return 1.0 / _factors(z, t, geom)[2]

    return expect_uniform(inv_itt, prior, n_z, n_t) / (2.0 * snr * geom.pitch)
