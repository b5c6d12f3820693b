"""Recovering wind parameters from amplitude measurements.

Three inversions live here: the pointwise velocity read-off of a single
amplitude, a full (speed, RA, dec) fit to a diurnal series, and the log-log
regression of fringe shift against permittivity difference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import optics, sky
from .errors import DegenerateInstrument, DegenerateTable, InsufficientData, NonConvergence
from .synthesis import EpsilonSweepTable, MeasurementSeries

MIN_SAMPLES = 8
MIN_SPAN = 12 * 3600.0  # s

GRID_RA_STEP_DEG = 15.0
GRID_DEC_STEP_DEG = 10.0
GRADIENT_TOL = 1e-12
MAX_ITERATIONS = 200

PARAMETERS = ("speed", "right_ascension", "declination")
_EPS = np.finfo(float).eps


def invert_velocity_point(a_m, instrument: optics.Interferometer):
    """Horizontal speed implied by a normalised amplitude, ``A_m lambda c / (l deps)``."""
    deps = instrument.epsilon_difference
    if deps == 0:
        raise DegenerateInstrument("eps1 == eps2: the first-order signal is identically zero")
    return a_m * instrument.wavelength * optics.SPEED_OF_LIGHT / (instrument.length * deps)


@dataclass(frozen=True)
class FitResult:
    """Outcome of :func:`fit_wind`.

    ``covariance_diag`` holds variances for (speed [m^2/s^2], RA [rad^2],
    dec [rad^2]); a parameter the data cannot constrain gets ``inf`` and is
    listed in ``unconstrained``.
    """

    wind: sky.WindVector
    residual_rms: float
    iterations: int
    converged: bool
    covariance_diag: tuple
    gradient_norm: float = 0.0
    unconstrained: tuple = ()

    def curve(self, series: MeasurementSeries):
        """Reconstructed amplitudes at the series' epochs."""
        v_hor = sky.horizontal_projection(self.wind, series.site, series.epochs)
        return optics.fringe_amplitude(series.instrument, np.atleast_1d(v_hor))


class _Model:
    """A_m(t) = k * speed * sin z(t) with the instrument and site held fixed.

    Speed is carried in km/s inside the optimiser so that all three Jacobian
    columns are of comparable size.
    """

    def __init__(self, series: MeasurementSeries):
        self.k = float(optics.fringe_amplitude(series.instrument, 1000.0))  # per km/s
        if self.k == 0:
            raise DegenerateInstrument("eps1 == eps2: the first-order signal is identically zero")
        self.lst = np.asarray(sky.local_sidereal_angle(series.epochs, series.site), dtype=float)
        self.latitude = series.site.latitude
        self.data = series.a_m

    def fraction(self, ra, dec):
        return sky.horizontal_fraction(self.lst - ra, dec, self.latitude)

    def residual_and_jacobian(self, p):
        speed, ra, dec = p
        h = self.lst - ra
        sp, cp = math.sin(self.latitude), math.cos(self.latitude)
        sd, cd = math.sin(dec), math.cos(dec)
        sh, ch = np.sin(h), np.cos(h)
        east = -cd * sh
        north = cp * sd - sp * cd * ch
        s = np.hypot(east, north)
        safe = np.where(s > 0, s, 1.0)
        # d(east), d(north) with respect to ra (dH/dra = -1) and dec
        de_dra, dn_dra = cd * ch, -sp * cd * sh
        de_ddec, dn_ddec = sd * sh, cp * cd + sp * sd * ch
        ds_dra = np.where(s > 0, (east * de_dra + north * dn_dra) / safe, 0.0)
        ds_ddec = np.where(s > 0, (east * de_ddec + north * dn_ddec) / safe, 0.0)
        r = self.k * speed * s - self.data
        jac = np.column_stack((self.k * s, self.k * speed * ds_dra, self.k * speed * ds_ddec))
        return r, jac


def _normalise(p):
    """Fold dec back into [-pi/2, pi/2] (same direction) and wrap RA into [0, 2pi)."""
    speed, ra, dec = p
    dec = math.remainder(dec, 2 * math.pi)
    if dec > math.pi / 2:
        dec, ra = math.pi - dec, ra + math.pi
    elif dec < -math.pi / 2:
        dec, ra = -math.pi - dec, ra + math.pi
    ra = ra % (2 * math.pi)
    if ra >= 2 * math.pi:
        ra = 0.0
    return np.array([speed, ra, dec])


def grid_seed(model: _Model):
    """Best (speed, RA, dec) on the coarse direction grid.

    For fixed direction the model is linear in speed, so the optimal speed is
    solved in closed form at every node.  Ties resolve to the first node in
    (dec, RA) index order.
    """
    ras = np.radians(np.arange(0.0, 360.0, GRID_RA_STEP_DEG))
    decs = np.radians(np.arange(-90.0, 90.0 + 1e-9, GRID_DEC_STEP_DEG))
    dec_g, ra_g = np.meshgrid(decs, ras, indexing="ij")
    dec_g, ra_g = dec_g.ravel(), ra_g.ravel()
    s = sky.horizontal_fraction(model.lst[None, :] - ra_g[:, None], dec_g[:, None], model.latitude)
    ss = np.einsum("ij,ij->i", s, s)
    sa = s @ model.data
    speed = np.where(ss > 0, np.maximum(sa, 0.0) / np.where(ss > 0, ss, 1.0), 0.0) / model.k
    resid = model.k * speed[:, None] * s - model.data[None, :]
    cost = np.einsum("ij,ij->i", resid, resid)
    best = int(np.argmin(cost))
    return np.array([speed[best], ra_g[best], dec_g[best]])


def _covariance(jac, cost, n):
    """Diagonal of sigma^2 (J^T J)^-1; columns with no leverage are reported as inf."""
    p = jac.shape[1]
    norms = np.linalg.norm(jac, axis=0)
    free = norms > 1e-8 * norms.max()
    diag = np.full(p, np.inf)
    if free.any():
        scaled = jac[:, free] / norms[free]
        inv = np.linalg.pinv(scaled.T @ scaled, rcond=1e-13)
        sigma2 = 2.0 * cost / max(n - p, 1)
        diag[free] = sigma2 * np.diag(inv) / norms[free] ** 2
    return diag


def fit_wind(series: MeasurementSeries, max_iterations: int = MAX_ITERATIONS,
             gtol: float = GRADIENT_TOL) -> FitResult:
    """Least-squares wind vector from a diurnal amplitude series.

    A coarse direction grid (15 deg in RA, 10 deg in dec) seeds a
    Levenberg-Marquardt refinement with Marquardt diagonal scaling.  The fit
    has converged once ``|J^T r|`` drops below ``gtol`` (A_m units).  If the
    damping runs away without that happening the result comes back with
    ``converged=False``; exhausting ``max_iterations`` raises
    :class:`NonConvergence`.

    The amplitude depends only on the axis of the wind, so (dec, RA) and
    (-dec, RA + 180 deg) fit equally well; the northern one is reported.
    Compare reconstructed curves rather than angles.
    """
    if len(series) < MIN_SAMPLES or series.span < MIN_SPAN:
        raise InsufficientData(
            f"need >= {MIN_SAMPLES} samples over >= 12 h, got {len(series)} over "
            f"{series.span / 3600.0:.2f} h")
    model = _Model(series)
    p = grid_seed(model)
    r, jac = model.residual_and_jacobian(p)
    cost = 0.5 * float(r @ r)
    grad = jac.T @ r
    lam = 1e-3
    converged = bool(np.linalg.norm(grad) < gtol)
    iterations = 0
    stalled = False
    while not converged:
        if iterations >= max_iterations:
            raise NonConvergence(
                f"no convergence after {max_iterations} iterations "
                f"(|grad| = {np.linalg.norm(grad):.3e})")
        iterations += 1
        jtj = jac.T @ jac
        scale = np.maximum(np.diag(jtj), 1e-300)
        while True:
            try:
                step = np.linalg.solve(jtj + lam * np.diag(scale), -grad)
            except np.linalg.LinAlgError:
                step = None
            if step is not None:
                trial = _normalise(p + step)
                if trial[0] >= 0:
                    r_t, jac_t = model.residual_and_jacobian(trial)
                    cost_t = 0.5 * float(r_t @ r_t)
                    reduction = 0.5 * float((r - r_t) @ (r + r_t))
                    # near the optimum the cost change drowns in rounding of the
                    # model values; the gradient is still resolvable, so use it
                    floor = 16 * _EPS * float(np.abs(r_t + model.data) @ np.abs(r_t))
                    if reduction > floor or (
                            reduction >= -floor
                            and np.linalg.norm(jac_t.T @ r_t) < np.linalg.norm(grad)):
                        break
            lam = lam * 4.0 if lam > 0 else 1e-12
            if lam > 1e16:
                stalled = True
                break
        if stalled:
            break
        p, r, jac, cost = trial, r_t, jac_t, cost_t
        grad = jac.T @ r
        lam = max(lam / 5.0, 1e-15)
        converged = bool(np.linalg.norm(grad) < gtol)

    n = len(series)
    cov = _covariance(jac, cost, n)
    cov[0] *= 1e6  # (km/s)^2 -> (m/s)^2
    speed, ra, dec = (float(x) for x in p)
    if dec < 0:
        # report the northern member of the (dec, RA) ~ (-dec, RA + 180 deg) pair
        ra, dec = (ra + math.pi) % (2 * math.pi), -dec
    wind = sky.WindVector(speed * 1000.0, ra, dec)
    unconstrained = tuple(name for name, v in zip(PARAMETERS, cov) if not np.isfinite(v))
    return FitResult(
        wind=wind,
        residual_rms=math.sqrt(2.0 * cost / n),
        iterations=iterations,
        converged=converged,
        covariance_diag=tuple(float(v) for v in cov),
        gradient_norm=float(np.linalg.norm(grad)),
        unconstrained=unconstrained,
    )


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float  # natural log units
    r_squared: float
    max_residual: float = 0.0  # largest |log residual| about the fitted line


def fit_loglog_slope(table: EpsilonSweepTable) -> RegressionResult:
    """Ordinary least squares of ln X_m on ln(eps1 - eps2)."""
    x = table.column("deps")
    y = table.column("x_m")
    if np.any(x <= 0) or np.any(y <= 0):
        raise DegenerateTable("log-log regression needs positive eps1 - eps2 and X_m")
    if np.unique(x).size < 2:
        raise DegenerateTable("need at least two distinct permittivity differences")
    lx, ly = np.log(x), np.log(y)
    xm, ym = lx.mean(), ly.mean()
    dx, dy = lx - xm, ly - ym
    slope = float(dx @ dy / (dx @ dx))
    intercept = float(ym - slope * xm)
    resid = ly - (intercept + slope * lx)
    ss_tot = float(dy @ dy)
    r2 = 1.0 - float(resid @ resid) / ss_tot if ss_tot > 0 else 1.0
    return RegressionResult(slope, intercept, min(max(r2, 0.0), 1.0), float(np.max(np.abs(resid))))
