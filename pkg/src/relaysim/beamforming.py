"""Array gain model: steered uniform-linear-array beams and fixed broad beams.

Elements are isotropic; all directivity comes from the azimuth array factor
plus a fixed elevation gain of 10*log10(n_elevation). A sector radiates its
pattern inside its coverage arc and a flat floor (peak + floor_rel_db)
outside, which stands in for the front-to-back rejection of a real sector
enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ArrayGeometry:
    n_azimuth: int
    n_elevation: int
    element_spacing_wl: float = 0.5

    def __post_init__(self):
        if self.n_azimuth < 1 or self.n_elevation < 1:
            raise ValueError("element counts must be >= 1")
        if not self.element_spacing_wl > 0.0:
            raise ValueError("element spacing must be > 0")

    @property
    def n_elements(self) -> int:
        return self.n_azimuth * self.n_elevation


@dataclass(frozen=True)
class BeamConfig:
    """One beam of a sector: either steered toward a target or a fixed broad
    beam whose in-arc gain sits ``broad_loss_db`` below the steered peak."""

    mode: str = "steered"  # "steered" | "broad"
    steer_azimuth_deg: float = 0.0
    broad_loss_db: float = -8.0
    boresight_deg: float = 0.0
    arc_width_deg: float = 90.0
    floor_rel_db: float = -30.0

    def __post_init__(self):
        if self.mode not in ("steered", "broad"):
            raise ValueError(f"unknown beam mode {self.mode!r}")
        if self.broad_loss_db > 0.0:
            raise ValueError(
                f"broad_loss_db must be <= 0 dB, got {self.broad_loss_db}"
            )
        if not 0.0 < self.arc_width_deg <= 360.0:
            raise ValueError(f"arc_width_deg must be in (0, 360], got {self.arc_width_deg}")


def wrap_deg(a):
    """Wrap angle(s) to [-180, 180)."""
    return (np.asarray(a, dtype=float) + 180.0) % 360.0 - 180.0


def ula_factor_db(n: int, spacing_wl: float, du):
    """Array-factor gain (dB, relative to a single element) of an n-element
    ULA at sine-space offset ``du`` = sin(target) - sin(steer) from the
    steered direction. Peak value is 10*log10(n) at du = 0."""
    du = np.asarray(du, dtype=float)
    x = np.pi * spacing_wl * du
    sin_x = np.sin(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        af = np.where(np.abs(sin_x) < 1e-12, 1.0, np.sin(n * x) / (n * np.where(sin_x == 0.0, 1.0, sin_x)))
    mag = np.maximum(np.abs(af), 1e-15)
    return 10.0 * np.log10(n) + 20.0 * np.log10(mag)


def azimuth_gain_db(arr: ArrayGeometry, beam: BeamConfig, target_azimuth_deg):
    """Azimuth gain (dB) of the beam toward target angle(s).

    Steered mode evaluates the ULA array factor at the target versus the
    steer angle; broad mode is flat at peak + broad_loss_db across the arc.
    Outside the coverage arc both modes fall to peak + floor_rel_db.
    """
    rel_t = wrap_deg(np.asarray(target_azimuth_deg, dtype=float) - beam.boresight_deg)
    in_arc = np.abs(rel_t) <= beam.arc_width_deg / 2.0 + 1e-12
    peak = 10.0 * math.log10(arr.n_azimuth)
    if beam.mode == "broad":
        gain = np.where(in_arc, peak + beam.broad_loss_db, peak + beam.floor_rel_db)
    else:
        rel_s = wrap_deg(beam.steer_azimuth_deg - beam.boresight_deg)
        du = np.sin(np.radians(rel_t)) - math.sin(math.radians(rel_s))
        pattern = ula_factor_db(arr.n_azimuth, arr.element_spacing_wl, du)
        gain = np.where(in_arc, pattern, peak + beam.floor_rel_db)
    if gain.ndim == 0:
        return float(gain)
    return gain


def elevation_gain_db(arr: ArrayGeometry) -> float:
    """Fixed elevation gain: max array gain of the elevation column."""
    return 10.0 * math.log10(arr.n_elevation)


def tx_power_dbm(arr: ArrayGeometry, per_pa_dbm: float) -> float:
    """Total conducted power with one PA per element."""
    return per_pa_dbm + 10.0 * math.log10(arr.n_elements)


def bf_loss_factor(beam: BeamConfig) -> float:
    """Linear beamforming loss factor relative to the max array gain."""
    if beam.mode == "steered":
        return 1.0
    return 10.0 ** (beam.broad_loss_db / 10.0)


@dataclass(frozen=True)
class AntennaSet:
    """Array geometries and power settings of every node class."""

    gnb: ArrayGeometry = ArrayGeometry(16, 4)
    relay_bh: ArrayGeometry = ArrayGeometry(4, 1)
    relay_ac: ArrayGeometry = ArrayGeometry(16, 4)
    ue: ArrayGeometry = ArrayGeometry(2, 1)
    per_pa_dbm: float = 7.0
    broad_loss_db: float = -8.0
    floor_rel_db: float = -30.0

    def __post_init__(self):
        if self.broad_loss_db > 0.0:
            raise ValueError(f"broad_loss_db must be <= 0, got {self.broad_loss_db}")


def batch_beam_gain_db(n_az, spacing_wl, boresight_deg, arc_deg, steer_deg,
                       broad_mask, broad_loss_db, floor_rel_db, target_deg):
    """Gain of many beams toward many targets at once.

    ``boresight_deg``, ``arc_deg``, ``steer_deg`` and ``broad_mask`` describe
    one beam per row; ``target_deg`` broadcasts against them (typically a
    (n_beam, n_target) matrix). Steered rows evaluate the ULA pattern, broad
    rows are flat at peak + broad_loss_db; outside the arc everything drops
    to peak + floor_rel_db.
    """
    bore = np.asarray(boresight_deg, dtype=float)
    rel_t = wrap_deg(np.asarray(target_deg, dtype=float) - bore)
    in_arc = np.abs(rel_t) <= np.asarray(arc_deg, dtype=float) / 2.0 + 1e-12
    peak = 10.0 * math.log10(n_az)
    rel_s = wrap_deg(np.asarray(steer_deg, dtype=float) - bore)
    du = np.sin(np.radians(rel_t)) - np.sin(np.radians(rel_s))
    pattern = ula_factor_db(n_az, spacing_wl, du)
    broad = np.asarray(broad_mask, dtype=bool)
    gain = np.where(broad, peak + broad_loss_db, pattern)
    return np.where(in_arc, gain, peak + floor_rel_db)


def rx_pattern_gain_db(arr: ArrayGeometry, pointing_deg, target_deg):
    """Receive gain of an array steered at ``pointing_deg`` (its server),
    evaluated toward ``target_deg``; no arc masking (broadcastable)."""
    rel = wrap_deg(np.asarray(target_deg, dtype=float) - np.asarray(pointing_deg, dtype=float))
    du = np.sin(np.radians(rel))
    return ula_factor_db(arr.n_azimuth, arr.element_spacing_wl, du)
