"""Large-scale channel: dual-slope pathloss, corner knife-edge diffraction,
lognormal shadowing and thermal noise floors.

Pathloss is anchored at the 1 m free-space loss for the carrier and follows
exponent 2 up to a per-link-type breakpoint (200 m backhaul, 30 m access),
then 3.2 beyond, continuous at the breakpoint. Corners add single knife-edge
losses computed from the route deviation angle. Shadowing is zero-mean
Gaussian in dB, drawn deterministically per (site pair, drop seed) through a
counter-style integer hash, so samples are reproducible and identical whether
generated one link at a time or as a whole matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import ndtri

SPEED_OF_LIGHT = 3.0e8  # m/s


class LinkKind(Enum):
    BH = "bh"
    AC = "ac"


def free_space_loss_1m_db(carrier_freq_hz: float) -> float:
    return 20.0 * math.log10(4.0 * math.pi * carrier_freq_hz / SPEED_OF_LIGHT)


@dataclass(frozen=True)
class PathlossParams:
    carrier_freq_hz: float = 28.0e9
    near_exponent: float = 2.0
    far_exponent: float = 3.2
    breakpoint_bh_m: float = 200.0
    breakpoint_ac_m: float = 30.0
    shadow_sigma_bh_db: float = 4.0
    shadow_sigma_ac_db: float = 8.0
    reference_loss_1m_db: float | None = None  # None -> free space at 1 m

    def __post_init__(self):
        if self.near_exponent <= 0 or self.far_exponent <= 0:
            raise ValueError("pathloss exponents must be > 0")
        if self.breakpoint_bh_m <= 0 or self.breakpoint_ac_m <= 0:
            raise ValueError("breakpoints must be > 0")
        if self.shadow_sigma_bh_db < 0 or self.shadow_sigma_ac_db < 0:
            raise ValueError("shadow sigmas must be >= 0")

    @property
    def l0_db(self) -> float:
        if self.reference_loss_1m_db is not None:
            return self.reference_loss_1m_db
        return free_space_loss_1m_db(self.carrier_freq_hz)

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq_hz

    def breakpoint(self, kind: LinkKind) -> float:
        return self.breakpoint_bh_m if kind is LinkKind.BH else self.breakpoint_ac_m

    def shadow_sigma(self, kind: LinkKind) -> float:
        return self.shadow_sigma_bh_db if kind is LinkKind.BH else self.shadow_sigma_ac_db


@dataclass(frozen=True)
class NoiseParams:
    bandwidth_hz: float = 0.8e9
    base_noise_figure_db: float = 7.0
    thermal_density_dbm_hz: float = -174.0

    def __post_init__(self):
        if not self.bandwidth_hz > 0:
            raise ValueError("bandwidth must be > 0")


def pathloss_db(distance_m, kind: LinkKind, params: PathlossParams):
    """Dual-slope pathloss, continuous at the breakpoint. Vectorized."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0.0):
        raise ValueError("distance must be > 0")
    bp = params.breakpoint(kind)
    l0 = params.l0_db
    near = l0 + 10.0 * params.near_exponent * np.log10(d)
    l_bp = l0 + 10.0 * params.near_exponent * math.log10(bp)
    far = l_bp + 10.0 * params.far_exponent * np.log10(d / bp)
    out = np.where(d < bp, near, far)
    return float(out) if out.ndim == 0 else out


def knife_edge_loss_db(nu):
    """Single knife-edge loss J(v); 0 below v = -0.78. Vectorized."""
    v = np.asarray(nu, dtype=float)
    arg = np.sqrt((v - 0.1) ** 2 + 1.0) + v - 0.1
    loss = 6.9 + 20.0 * np.log10(np.maximum(arg, 1e-12))
    out = np.where(v > -0.78, loss, 0.0)
    return float(out) if out.ndim == 0 else out


def corner_loss_db(theta_rad, d_before, d_after, wavelength_m):
    """Knife-edge loss of one corner with deviation angle theta and flanking
    sub-path lengths. Vectorized; zero-length legs contribute nothing."""
    th = np.asarray(theta_rad, dtype=float)
    d1 = np.asarray(d_before, dtype=float)
    d2 = np.asarray(d_after, dtype=float)
    denom = np.maximum(d1 + d2, 1e-12)
    nu = th * np.sqrt(2.0 * d1 * d2 / (wavelength_m * denom))
    out = np.where((d1 > 0) & (d2 > 0), knife_edge_loss_db(nu), 0.0)
    return float(out) if out.ndim == 0 else out


def diffraction_loss_db(route, wavelength_m: float) -> float:
    """Total diffraction loss of a street route: corner losses add in dB."""
    total = 0.0
    for c in route.corners:
        total += float(corner_loss_db(c.deviation_rad, c.d_before, c.d_after, wavelength_m))
    return total


def noise_floor_dbm(n: NoiseParams, extra_nf_db: float = 0.0) -> float:
    return (n.thermal_density_dbm_hz + 10.0 * math.log10(n.bandwidth_hz)
            + n.base_noise_figure_db + extra_nf_db)


# ---------------------------------------------------------------------------
# Deterministic shadowing

_U64 = np.uint64


def _splitmix64(z):
    with np.errstate(over="ignore"):
        z = np.asarray(z, dtype=_U64) + _U64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
        return z ^ (z >> _U64(31))


def _pair_uniform(seed, id_a, id_b):
    """Uniform (0,1) deterministic in the unordered id pair and the seed."""
    a = np.asarray(id_a, dtype=np.int64).astype(_U64)
    b = np.asarray(id_b, dtype=np.int64).astype(_U64)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    h = _splitmix64(int(seed) & 0x7FFFFFFFFFFFFFFF)
    h = _splitmix64(h ^ lo)
    h = _splitmix64(h ^ hi)
    return ((h >> _U64(11)).astype(np.float64) + 0.5) * 2.0 ** -53


def shadow_sample_db(id_a, id_b, kind: LinkKind, seed: int, params: PathlossParams):
    """Zero-mean Gaussian shadowing in dB, frozen per (link, seed).

    Symmetric in the endpoint ids (reciprocity) and vectorized over id
    arrays. The same ids and seed always return the same value.
    """
    sigma = params.shadow_sigma(kind)
    if sigma == 0.0:
        z = np.zeros(np.broadcast(np.asarray(id_a), np.asarray(id_b)).shape)
        return float(z) if z.ndim == 0 else z
    u = _pair_uniform(seed, id_a, id_b)
    out = sigma * ndtri(u)
    return float(out) if np.ndim(out) == 0 else out
