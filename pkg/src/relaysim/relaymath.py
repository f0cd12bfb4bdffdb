"""End-to-end rate and effective-SINR laws for two-hop and N-hop relaying.

Everything in this module works on linear quantities: SINRs are dimensionless
power ratios >= 0, powers are mW, rates are spectral efficiencies in
bits/s/Hz. All functions are pure; none touch global state, so they are safe
to call from any number of threads.

Covered link laws:

* decode-forward, full duplex (FDDF): bottleneck-hop rate,
* decode-forward, half duplex (HDDF): harmonic-mean rate with the optimal
  time split between backhaul and access,
* amplify-forward repeater: effective SINR after noise-figure, finite-gain
  and beamforming loss factors, downlink and uplink,
* N-hop generalizations of all three.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class CapacityLaw:
    """Shannon spectral efficiency, optionally clipped at a maximum.

    ``cap=None`` means plain log2(1+SINR). A finite cap mimics the highest
    supported modulation/coding efficiency.
    """

    cap: Optional[float] = None

    def __post_init__(self):
        if self.cap is not None and not self.cap > 0.0:
            raise ValueError(f"capacity cap must be > 0, got {self.cap}")


UNCAPPED = CapacityLaw()


class ResourceSplit(NamedTuple):
    """Fractions of slot time given to the backhaul and access hops."""

    beta_bh: float
    beta_ac: float


@dataclass(frozen=True)
class AfParams:
    """Amplify-forward repeater parameters, all linear.

    g_max      -- maximum stable amplification gain (power ratio)
    delta_nf   -- noise-figure penalty relative to a decode-forward node, >= 1
    p_t2_max   -- maximum repeater transmit power, mW
    sigma1_sq  -- noise-plus-interference power on the repeater's receive hop, mW
    f_bf       -- beamforming loss factor of the access beam, in (0, 1]
    """

    g_max: float
    delta_nf: float
    p_t2_max: float
    sigma1_sq: float
    f_bf: float = 1.0

    def __post_init__(self):
        if not self.g_max > 0.0:
            raise ValueError(f"g_max must be > 0, got {self.g_max}")
        if self.delta_nf < 1.0:
            raise ValueError(f"delta_nf must be >= 1 (linear), got {self.delta_nf}")
        if not self.p_t2_max > 0.0:
            raise ValueError(f"p_t2_max must be > 0, got {self.p_t2_max}")
        if not self.sigma1_sq > 0.0:
            raise ValueError(f"sigma1_sq must be > 0, got {self.sigma1_sq}")
        if not 0.0 < self.f_bf <= 1.0:
            raise ValueError(f"f_bf must be in (0, 1], got {self.f_bf}")


def _check_sinr(s, name="sinr"):
    if not math.isfinite(s) and not s == math.inf:
        raise ValueError(f"{name} must not be NaN")
    if s < 0.0:
        raise ValueError(f"{name} must be >= 0, got {s}")


def capacity(sinr: float, law: CapacityLaw = UNCAPPED) -> float:
    """Spectral efficiency achieved at a linear SINR."""
    _check_sinr(sinr)
    rate = math.log1p(sinr) / _LN2
    if law.cap is not None:
        rate = min(rate, law.cap)
    return rate


def capacity_inverse(rate: float, law: CapacityLaw = UNCAPPED) -> float:
    """SINR whose capacity equals ``rate``; inverse of :func:`capacity`."""
    if rate < 0.0:
        raise ValueError(f"rate must be >= 0, got {rate}")
    if law.cap is not None and rate >= law.cap:
        raise ValueError(
            f"rate {rate} is not attainable below the capacity cap {law.cap}"
        )
    return math.expm1(rate * _LN2)


def fddf_rate(c_bh: float, c_ac: float) -> float:
    """Full-duplex decode-forward rate: the weaker hop is the bottleneck."""
    if c_bh < 0.0 or c_ac < 0.0:
        raise ValueError("hop rates must be >= 0")
    return min(c_bh, c_ac)


def hddf_rate(c_bh: float, c_ac: float) -> tuple[float, ResourceSplit]:
    """Half-duplex decode-forward rate with the optimal time split.

    The two hops are time-multiplexed; the best split puts time on each hop
    inversely proportional to its capacity, which gives the harmonic
    combination c_bh*c_ac/(c_bh+c_ac). Returns (rate, split); the split
    fractions sum to 1. A dead hop (zero rate) yields rate 0 with split
    (0, 0) rather than an error, so Monte-Carlo drops aggregate cleanly.
    """
    if c_bh < 0.0 or c_ac < 0.0:
        raise ValueError("hop rates must be >= 0")
    if c_bh == 0.0 or c_ac == 0.0:
        return 0.0, ResourceSplit(0.0, 0.0)
    total = c_bh + c_ac
    return c_bh * c_ac / total, ResourceSplit(c_ac / total, c_bh / total)


def finite_gain_power_loss(p: AfParams, sinr_bh: float) -> float:
    """Power loss factor from the repeater's finite amplification gain.

    The repeater amplifies whatever it receives; when the received power
    P_y1 = sigma1_sq*(sinr_bh + delta_nf) times g_max falls short of
    p_t2_max, the transmit power target is missed by exactly this factor.
    """
    _check_sinr(sinr_bh, "sinr_bh")
    p_y1 = p.sigma1_sq * (sinr_bh + p.delta_nf)
    return min(1.0, p_y1 * p.g_max / p.p_t2_max)


def noise_forwarding_loss(sinr_bh: float, delta_nf: float) -> float:
    """Fraction of the repeater's transmit power that is signal, not noise."""
    _check_sinr(sinr_bh, "sinr_bh")
    if delta_nf < 1.0:
        raise ValueError(f"delta_nf must be >= 1, got {delta_nf}")
    return sinr_bh / (delta_nf + sinr_bh)


def _harmonic(a: float, b: float) -> float:
    if a <= 0.0 or b <= 0.0:
        return 0.0
    if math.isinf(a):
        return b
    if math.isinf(b):
        return a
    return a * b / (a + b)


def af_effective_sinr_dl(sinr_bh: float, sinr_ac: float, p: AfParams) -> float:
    """Downlink end-to-end effective SINR of an amplify-forward repeater.

    The backhaul hop is degraded by the noise-figure penalty, the access hop
    by the beamforming, finite-gain and noise-forwarding loss factors; the
    two adjusted hop SINRs combine harmonically.
    """
    _check_sinr(sinr_bh, "sinr_bh")
    _check_sinr(sinr_ac, "sinr_ac")
    f_p = finite_gain_power_loss(p, sinr_bh)
    f_n = noise_forwarding_loss(sinr_bh, p.delta_nf)
    adj_bh = sinr_bh / p.delta_nf
    adj_ac = p.f_bf * f_p * f_n * sinr_ac
    return _harmonic(adj_bh, adj_ac)


def af_effective_sinr_ul(sinr_bh: float, sinr_ac: float, p: AfParams) -> float:
    """Uplink variant: the access hop comes first, so the noise-figure
    penalty applies to it, while the finite-gain and noise-forwarding losses
    (driven by the access-hop received power, with ``p.sigma1_sq`` now the
    access-hop noise variance at the repeater) fall on the backhaul hop.
    The beamforming loss stays on the access hop."""
    _check_sinr(sinr_bh, "sinr_bh")
    _check_sinr(sinr_ac, "sinr_ac")
    f_p2 = finite_gain_power_loss(p, sinr_ac)
    f_n2 = noise_forwarding_loss(sinr_ac, p.delta_nf)
    adj_bh = f_p2 * f_n2 * sinr_bh
    adj_ac = p.f_bf * sinr_ac / p.delta_nf
    return _harmonic(adj_bh, adj_ac)


def multihop_fddf_rate(rates: Sequence[float]) -> float:
    """N-hop full-duplex decode-forward rate: minimum over all hops."""
    if len(rates) == 0:
        raise ValueError("need at least one hop rate")
    if any(r < 0.0 for r in rates):
        raise ValueError("hop rates must be >= 0")
    return min(rates)


def multihop_hddf_rate(rates: Sequence[float]) -> float:
    """N-hop half-duplex decode-forward rate.

    Each relay time-shares only its own receive and transmit hops, so hops
    more than one apart run in parallel and the chain rate is the minimum
    over consecutive-hop pairs of their two-hop half-duplex rate. A single
    hop needs no splitting and passes through unchanged.
    """
    if len(rates) == 0:
        raise ValueError("need at least one hop rate")
    if any(r < 0.0 for r in rates):
        raise ValueError("hop rates must be >= 0")
    if len(rates) == 1:
        return rates[0]
    return min(_harmonic(rates[i - 1], rates[i]) for i in range(1, len(rates)))


def multihop_af_sinr(hop_sinrs: Sequence[float]) -> float:
    """N-hop amplify-forward effective SINR.

    Inputs are the per-hop SINRs already adjusted by their loss factors
    (caller responsibility); the chain combines them harmonically:
    1 / sum(1/s_i).
    """
    if len(hop_sinrs) == 0:
        raise ValueError("need at least one hop SINR")
    if any(s < 0.0 for s in hop_sinrs):
        raise ValueError("hop SINRs must be >= 0")
    acc = hop_sinrs[0]
    for s in hop_sinrs[1:]:
        acc = _harmonic(acc, s)
    return acc
