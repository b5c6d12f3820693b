"""Propagation times and fringe shift of the two-media Michelson interferometer.

Every light path in an arm goes out through one dielectric (``forward_medium``,
permittivity eps1) and comes back through another (``return_medium``, eps2).
The medium speed follows the Fresnel drag law, and the arm-time difference
that drives the fringe shift is linear in v/c when eps1 != eps2.

Sign convention
---------------
``v`` is the component of the wind (the apparatus' motion relative to the
rest frame, seen from the apparatus) along the parallel arm.  For ``v > 0`` the
forward leg propagates against the wind and the return leg with it.  This is
the orientation under which the exact round-trip time reduces to the
first-order expression ``(l/c)[sqrt(eps1) + sqrt(eps2) + (v/c)(deps1 - deps2)]``
and the signal ``dt = (v/c)(l/c)(eps1 - eps2)`` is positive for eps1 > eps2.

All quantities are SI (metres, seconds).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact by definition of the metre


@dataclass(frozen=True)
class PhysicsConstants:
    c: float = SPEED_OF_LIGHT


@dataclass(frozen=True)
class Medium:
    """A non-dispersive dielectric described by its permittivity."""

    name: str
    epsilon: float

    def __post_init__(self):
        if not math.isfinite(self.epsilon) or self.epsilon < 1.0:
            raise ValidationError(
                f"permittivity below 1 for medium {self.name!r}: {self.epsilon!r}")

    @property
    def n(self) -> float:
        return math.sqrt(self.epsilon)

    @property
    def delta_epsilon(self) -> float:
        """Particle contribution eps - 1 = n**2 - 1."""
        return self.epsilon - 1.0


VACUUM = Medium("vacuum", 1.0)
LAB_VACUUM = Medium("lab vacuum", 1.000006)
AIR = Medium("air", 1.0006)
CS2 = Medium("CS2", 1.0036)
PLEXIGLAS = Medium("plexiglas", 2.0)
CATIO3 = Medium("CaTiO3", 255.0)


@dataclass(frozen=True)
class Arm:
    length: float
    forward_medium: Medium
    return_medium: Medium

    def __post_init__(self):
        if not math.isfinite(self.length) or self.length <= 0:
            raise ValidationError(f"arm length must be positive, got {self.length!r}")

    @property
    def epsilon_difference(self) -> float:
        return self.forward_medium.epsilon - self.return_medium.epsilon


@dataclass(frozen=True)
class Interferometer:
    """Cross interferometer with a parallel and a perpendicular arm.

    ``wavelength`` and ``bandwidth`` (fringe spacing on the screen) are in
    metres.
    """

    arm_parallel: Arm
    arm_perpendicular: Arm
    wavelength: float
    bandwidth: float

    def __post_init__(self):
        if not math.isfinite(self.wavelength) or self.wavelength <= 0:
            raise ValidationError(f"wavelength must be positive, got {self.wavelength!r}")
        if not math.isfinite(self.bandwidth) or self.bandwidth <= 0:
            raise ValidationError(f"bandwidth must be positive, got {self.bandwidth!r}")

    @classmethod
    def symmetric(cls, length, forward_medium, return_medium, wavelength, bandwidth):
        arm = Arm(length, forward_medium, return_medium)
        return cls(arm, arm, wavelength, bandwidth)

    @property
    def is_symmetric(self) -> bool:
        return self.arm_parallel == self.arm_perpendicular

    @property
    def length(self) -> float:
        return self.arm_parallel.length

    @property
    def epsilon_difference(self) -> float:
        return self.arm_parallel.epsilon_difference


def paper_interferometer(forward=CS2, back=AIR, length=0.2, wavelength=6e-7, bandwidth=0.09):
    """The 1971 optical set-up: CS2 out, air back, 0.2 m arms, 600 nm, 90 mm fringes."""
    return Interferometer.symmetric(length, forward, back, wavelength, bandwidth)


@dataclass(frozen=True)
class Signal:
    """Arm-time difference and the fringe shift it produces.

    ``fringe_shift`` is normalised to the fringe spacing (X_m / X_o); the shift
    on the screen in metres is ``x_m``.
    """

    delta_t: float
    fringe_shift: float
    bandwidth: float

    @property
    def x_m(self) -> float:
        return self.fringe_shift * self.bandwidth


def _check_subluminal(v, c=SPEED_OF_LIGHT):
    if not abs(v) < c:
        raise DomainError(f"|v| = {abs(v)!r} m/s is not below c")


def fresnel_speed(medium: Medium, v: float) -> float:
    """Phase speed of light in a medium moving at signed speed ``v``.

    ``c/n + v (1 - 1/n**2)``: positive ``v`` drags the light along, negative
    ``v`` opposes it.  Raises :class:`DomainError` unless ``|v| < c/n``.
    """
    n = medium.n
    if not abs(v) < SPEED_OF_LIGHT / n:
        raise DomainError(
            f"|v| = {abs(v)!r} m/s outside the drag law's range for {medium.name!r} (c/n)")
    return SPEED_OF_LIGHT / n + v * (1.0 - 1.0 / (n * n))


def fresnel_speed_permittivity(medium: Medium, v: float) -> float:
    """Same law written with permittivities: ``c/sqrt(eps) + v deps/eps``."""
    eps = medium.epsilon
    if not abs(v) < SPEED_OF_LIGHT / math.sqrt(eps):
        raise DomainError(
            f"|v| = {abs(v)!r} m/s outside the drag law's range for {medium.name!r} (c/n)")
    return SPEED_OF_LIGHT / math.sqrt(eps) + v * medium.delta_epsilon / eps


def roundtrip_parallel_exact(arm: Arm, v: float) -> float:
    """Unexpanded round-trip time along an arm aligned with the wind.

    The forward leg runs at ``fresnel_speed(eps1, -v)`` and the return leg at
    ``fresnel_speed(eps2, +v)``.  The contracted length is taken equal to the
    rest length, since contraction is itself a (v/c)**2 effect.
    """
    out = arm.length / fresnel_speed(arm.forward_medium, -v)
    back = arm.length / fresnel_speed(arm.return_medium, v)
    return out + back


def roundtrip_parallel_first_order(arm: Arm, v: float) -> float:
    _check_subluminal(v)
    f, r = arm.forward_medium, arm.return_medium
    bracket = f.n + r.n + (v / SPEED_OF_LIGHT) * (f.delta_epsilon - r.delta_epsilon)
    return arm.length / SPEED_OF_LIGHT * bracket


def parallel_truncation_error(arm: Arm, v: float) -> float:
    """``roundtrip_parallel_exact - roundtrip_parallel_first_order``, without cancellation.

    Each leg contributes ``(l n/c) r**2 / (1 -+ r)`` with
    ``r = (v/c) deps / n``, so the (v/c)**2 remainder stays resolvable even
    when it is far below one ulp of the round-trip time itself.
    """
    _check_subluminal(v)
    total = 0.0
    for medium, sign in ((arm.forward_medium, -1.0), (arm.return_medium, 1.0)):
        fresnel_speed(medium, v)  # range check only
        r = (v / SPEED_OF_LIGHT) * medium.delta_epsilon / medium.n
        total += arm.length * medium.n / SPEED_OF_LIGHT * r * r / (1.0 + sign * r)
    return total


def roundtrip_perpendicular(arm: Arm, v: float, conventional: bool = False) -> float:
    """Round-trip time across the wind.

    By default the radicand is ``(c/n)**2 + v**2`` as in the original
    derivation; ``conventional=True`` uses ``(c/n)**2 - v**2``, the usual
    transverse-beam kinematics.  Both agree to first order.
    """
    _check_subluminal(v)
    sign = -1.0 if conventional else 1.0
    total = 0.0
    for medium in (arm.forward_medium, arm.return_medium):
        u = SPEED_OF_LIGHT / medium.n
        radicand = u * u + sign * v * v
        if radicand <= 0:
            raise DomainError(f"|v| = {abs(v)!r} m/s reaches c/n in {medium.name!r}")
        total += arm.length / math.sqrt(radicand)
    return total


def roundtrip_perpendicular_first_order(arm: Arm) -> float:
    return arm.length / SPEED_OF_LIGHT * (arm.forward_medium.n + arm.return_medium.n)


def delta_t_first_order(interferometer: Interferometer, v: float,
                        use_contributions: bool = False) -> float:
    """First-order arm-time difference ``(v/c)(l/c)(eps1 - eps2)``.

    With ``use_contributions`` the permittivity difference is formed as
    ``deps1 - deps2`` instead; the two agree exactly for eps in [1, 2] and to
    rounding elsewhere.

    Asymmetric interferometers fall back to the difference of the per-arm
    first-order times (parallel minus perpendicular).
    """
    _check_subluminal(v)
    if not interferometer.is_symmetric:
        return (roundtrip_parallel_first_order(interferometer.arm_parallel, v)
                - roundtrip_perpendicular_first_order(interferometer.arm_perpendicular))
    arm = interferometer.arm_parallel
    if use_contributions:
        deps = arm.forward_medium.delta_epsilon - arm.return_medium.delta_epsilon
    else:
        deps = arm.epsilon_difference
    return (v / SPEED_OF_LIGHT) * (arm.length / SPEED_OF_LIGHT) * deps


def fringe_shift(delta_t: float, wavelength: float, bandwidth: float = 1.0) -> Signal:
    """Convert an arm-time difference into a fringe shift, ``X_m = c (X_o/lambda) dt``."""
    if not wavelength > 0:
        raise ValidationError(f"wavelength must be positive, got {wavelength!r}")
    return Signal(delta_t, SPEED_OF_LIGHT * delta_t / wavelength, bandwidth)


def delta_t_from_fringe(fraction: float, wavelength: float) -> float:
    """Inverse of :func:`fringe_shift` for the normalised shift."""
    return fraction * wavelength / SPEED_OF_LIGHT


def rotation_signal(interferometer: Interferometer, v: float, theta: float) -> float:
    """Arm-time difference with the parallel arm turned by ``theta`` from the wind.

    Each arm sees the along-arm wind component, ``v cos(theta)`` for the
    parallel arm and ``v cos(theta + pi/2)`` for the other, so for a symmetric
    device ``dt(theta) = (v/c)(l/c)(eps1 - eps2)(cos theta + sin theta)``.
    ``theta = 0`` gives :func:`delta_t_first_order`.
    """
    _check_subluminal(v)
    if interferometer.is_symmetric:
        base = delta_t_first_order(interferometer, v)
        return base * (math.cos(theta) + math.sin(theta))
    a, b = interferometer.arm_parallel, interferometer.arm_perpendicular
    return (roundtrip_parallel_first_order(a, v * math.cos(theta))
            - roundtrip_parallel_first_order(b, -v * math.sin(theta)))


def fringe_amplitude(interferometer: Interferometer, v_hor):
    """Normalised fringe amplitude A_m = (l/lambda)(v_hor/c)(eps1 - eps2).

    This is the magnitude of the signal with the parallel arm along the
    horizontal wind, expressed in fringes.  Accepts scalars or arrays.
    """
    scale = interferometer.length / interferometer.wavelength * interferometer.epsilon_difference
    return scale * (v_hor / SPEED_OF_LIGHT)


def second_order_delta_t(length: float, medium: Medium, v: float) -> float:
    """Single-medium comparison signal ``(l/c)(v/c)**2 deps``.

    Only the scaling with (v/c)**2 and the ratio to the first-order device are
    fixed by the physics used here; the unit prefactor is a modelling choice.
    """
    _check_subluminal(v)
    beta = v / SPEED_OF_LIGHT
    return length / SPEED_OF_LIGHT * beta * beta * medium.delta_epsilon


def sensitivity_ratio(interferometer: Interferometer, single_medium: Medium, v: float) -> float:
    """Ratio of the two-media signal to the single-medium signal at equal arm length.

    Equals ``(c/v)(eps1 - eps2)/deps_single``.
    """
    if not v > 0:
        raise DomainError(f"sensitivity ratio needs v > 0, got {v!r}")
    second = second_order_delta_t(interferometer.length, single_medium, v)
    if second == 0:
        raise DomainError("second-order signal vanishes (vacuum comparison)")
    return delta_t_first_order(interferometer, v) / second
