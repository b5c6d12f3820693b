"""Horizontal projection of a fixed equatorial velocity vector over the day.

Epochs are POSIX seconds (UTC).  Angles are radians unless a name says
otherwise.  Sidereal time uses the IAU 1982 GMST polynomial in the form given
by Meeus, *Astronomical Algorithms* (2nd ed.), eq. 12.4; nutation and the
equation of the equinoxes are ignored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

import numpy as np

from .errors import ValidationError

TWO_PI = 2.0 * math.pi
SIDEREAL_DAY = 86164.0905  # s
SOLAR_DAY = 86400.0
J2000_UNIX = 946_728_000.0  # 2000-01-01T12:00:00 UTC

# Obninsk; local civil time in June 1971 was UT+3
OBNINSK_LATITUDE_DEG = 55.8
OBNINSK_LONGITUDE_DEG = 36.6
OBNINSK_UTC_OFFSET_H = 3.0


@dataclass(frozen=True)
class WindVector:
    """Speed (m/s) and equatorial direction of the assumed absolute motion."""

    speed: float
    right_ascension: float
    declination: float

    def __post_init__(self):
        if not math.isfinite(self.speed) or self.speed < 0:
            raise ValidationError(f"wind speed must be >= 0, got {self.speed!r}")
        if not -math.pi / 2 <= self.declination <= math.pi / 2:
            raise ValidationError(f"declination outside [-90, 90] deg: {self.declination!r}")
        if not 0 <= self.right_ascension < TWO_PI:
            raise ValidationError(f"right ascension outside [0, 360) deg: {self.right_ascension!r}")

    @classmethod
    def from_degrees(cls, speed, ra_deg, dec_deg):
        return cls(speed, math.radians(ra_deg % 360.0), math.radians(dec_deg))


@dataclass(frozen=True)
class ObserverSite:
    latitude: float
    longitude: float = 0.0  # east positive
    utc_offset_h: float = 0.0  # civil time zone, used only for the local-time axis

    def __post_init__(self):
        if not -math.pi / 2 <= self.latitude <= math.pi / 2:
            raise ValidationError(f"latitude outside [-90, 90] deg: {self.latitude!r}")
        if not math.isfinite(self.longitude):
            raise ValidationError(f"longitude must be finite, got {self.longitude!r}")

    @classmethod
    def from_degrees(cls, lat_deg, lon_deg=0.0, utc_offset_h=0.0):
        return cls(math.radians(lat_deg), math.radians(lon_deg), utc_offset_h)


def obninsk():
    return ObserverSite.from_degrees(OBNINSK_LATITUDE_DEG, OBNINSK_LONGITUDE_DEG,
                                     OBNINSK_UTC_OFFSET_H)


def epoch_from_local(when: datetime, utc_offset_h: float) -> float:
    """POSIX seconds for a naive local civil time in a fixed UTC offset."""
    if when.tzinfo is None:
        when = when.replace(tzinfo=timezone(timedelta(hours=utc_offset_h)))
    return when.timestamp()


def local_time_hours(epoch, utc_offset_h: float):
    """Mean solar local civil time in hours, wrapped to [0, 24)."""
    return np.mod((np.asarray(epoch, dtype=float) + utc_offset_h * 3600.0) / 3600.0, 24.0)


def gmst(epoch):
    """Greenwich mean sidereal angle (radians, [0, 2pi)) at POSIX ``epoch``."""
    d = (np.asarray(epoch, dtype=float) - J2000_UNIX) / SOLAR_DAY
    t = d / 36525.0
    # whole turns removed from the linear term before scaling, to keep precision
    frac = 0.98564736629 * d
    deg = 280.46061837 + 360.0 * np.mod(d, 1.0) + frac + (0.000387933 - t / 38710000.0) * t * t
    return np.mod(np.radians(np.mod(deg, 360.0)), TWO_PI)


def local_sidereal_angle(epoch, site: ObserverSite):
    return np.mod(gmst(epoch) + site.longitude, TWO_PI)


def _unit_horizontal(hour_angle, declination, latitude):
    """East, north and up components of a unit vector at (H, dec)."""
    sd, cd = np.sin(declination), np.cos(declination)
    sp, cp = math.sin(latitude), math.cos(latitude)
    ch = np.cos(hour_angle)
    east = -cd * np.sin(hour_angle)
    north = cp * sd - sp * cd * ch
    up = sp * sd + cp * cd * ch
    return east, north, up


def horizontal_fraction(hour_angle, declination, latitude):
    """sin of the zenith distance, i.e. |v_hor| / |v|, for a direction at (H, dec)."""
    east, north, _ = _unit_horizontal(hour_angle, declination, latitude)
    return np.hypot(east, north)


def horizontal_projection(wind: WindVector, site: ObserverSite, epoch):
    """Horizontal speed ``|v| sin z`` of the wind at ``epoch`` (scalar or array).

    ``cos z = sin(lat) sin(dec) + cos(lat) cos(dec) cos H`` with hour angle
    ``H = LST - RA``.  The hypot of the east/north components is used instead
    of ``sqrt(1 - cos**2 z)`` to stay accurate near the horizon.
    """
    hour_angle = local_sidereal_angle(epoch, site) - wind.right_ascension
    out = wind.speed * horizontal_fraction(hour_angle, wind.declination, site.latitude)
    return float(out) if np.ndim(out) == 0 else out


def projection_extrema(speed, declination, latitude):
    """Daily (min, max) of the horizontal speed from the culmination geometry.

    Over a day the zenith distance sweeps ``[|lat - dec|, pi - |lat + dec|]``;
    sin is concave on [0, pi], so the minimum sits at an end of that range and
    the maximum is ``speed`` whenever the range straddles the horizon.
    """
    z_upper = abs(latitude - declination)
    z_lower = math.pi - abs(latitude + declination)
    ends = (math.sin(z_upper), math.sin(z_lower))
    hi = 1.0 if z_upper <= math.pi / 2 <= z_lower else max(ends)
    return speed * min(ends), speed * hi


def sample_count(duration: float, step: float) -> int:
    if not step > 0:
        raise ValidationError(f"step must be positive, got {step!r}")
    if not duration >= step:
        raise ValidationError(f"duration {duration!r} shorter than step {step!r}")
    return math.floor(duration / step * (1 + 1e-12)) + 1


def schedule(start: float, duration: float, step: float) -> np.ndarray:
    """Uniform epochs ``start + k*step`` covering ``duration`` inclusively."""
    return start + step * np.arange(sample_count(duration, step), dtype=float)


def diurnal_curve(wind: WindVector, site: ObserverSite, start: float,
                  duration: float, step: float):
    """Sample the horizontal speed on a uniform grid.

    Returns ``(epochs, v_hor)`` arrays of length ``floor(duration/step) + 1``.
    """
    epochs = schedule(start, duration, step)
    return epochs, horizontal_projection(wind, site, epochs)
