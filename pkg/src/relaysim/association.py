"""One-hop RX-power association: UE -> serving node, relay -> donor gNB.

The serving node of a UE is whichever candidate sector delivers the largest
received power, measured with the transmitter steered at the UE (or using
its fixed broad beam) and the UE array pointed back. A relay's candidate
transmit power is what it could actually forward, min(P_t2_max,
G_max * P_rx_from_donor), so a repeater with a weak or missing backhaul has
a small association footprint. Decode-forward relays always measure at full
power. Ties break toward the lowest node id.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .beamforming import AntennaSet, elevation_gain_db, tx_power_dbm, wrap_deg
from .cases import DF, RelayCaseParams
from .channel import DropChannel
from .topology import GridScene, ROLE_RELAY_AC, ROLE_RELAY_BH


@dataclass
class AssociationMap:
    serving_site: np.ndarray      # (n_ue,) global site index
    serving_sector: np.ndarray    # (n_ue,) sector index local to the site
    is_indirect: np.ndarray       # (n_ue,) bool
    relay_donor_gnb: np.ndarray   # (n_relay,) global site index of donor
    relay_donor_sector: np.ndarray  # (n_relay,) donor's local sector index
    relay_bh_sector: np.ndarray   # (n_relay,) relay's local BH sector index
    relay_bh_rx_dbm: np.ndarray   # (n_relay,) frozen donor->relay RX power

    @property
    def indirect_fraction(self) -> float:
        if self.is_indirect.size == 0:
            return 0.0
        return float(np.mean(self.is_indirect))

    def to_json(self, scene: GridScene) -> str:
        doc = {
            "ues": [
                {
                    "ue": int(u),
                    "serving_site": int(self.serving_site[u]),
                    "sector": int(self.serving_sector[u]),
                    "indirect": bool(self.is_indirect[u]),
                }
                for u in range(len(self.serving_site))
            ],
            "relays": [
                {
                    "relay_site": int(scene.relay_ids[k]),
                    "donor_gnb": int(self.relay_donor_gnb[k]),
                    "donor_sector": int(self.relay_donor_sector[k]),
                    "bh_sector": int(self.relay_bh_sector[k]),
                    "bh_rx_dbm": float(self.relay_bh_rx_dbm[k]),
                }
                for k in range(len(self.relay_donor_gnb))
            ],
        }
        return json.dumps(doc, indent=1, sort_keys=True)


def _best_sector_gain(sectors, roles, ang_deg, n_az, floor_rel_db):
    """Peak-or-floor steered gain toward targets plus the chosen sector.

    ``ang_deg`` may be any shape; returns (gain_db, sector_local_idx) of the
    best matching sector among those whose role is in ``roles``. Inside a
    sector arc a steered beam reaches the full azimuth peak; outside every
    arc the node radiates at the floor.
    """
    ang = np.asarray(ang_deg, dtype=float)
    peak = 10.0 * math.log10(n_az)
    best_gain = np.full(ang.shape, -np.inf)
    best_idx = np.zeros(ang.shape, dtype=int)
    off_best = np.full(ang.shape, np.inf)
    for k, sec in enumerate(sectors):
        if sec.role not in roles:
            continue
        off = np.abs(wrap_deg(ang - sec.boresight_deg))
        in_arc = off <= sec.arc_width_deg / 2.0 + 1e-12
        gain = np.where(in_arc, peak, peak + floor_rel_db)
        better = (gain > best_gain) | ((gain == best_gain) & (off < off_best))
        best_gain = np.where(better, gain, best_gain)
        best_idx = np.where(better, k, best_idx)
        off_best = np.where(better, off, off_best)
    return best_gain, best_idx


def relay_donors(scene: GridScene, drop: DropChannel, ants: AntennaSet):
    """Pick each relay's donor gNB by backhaul RX power.

    Returns (donor_gnb_site, donor_sector, bh_sector, bh_rx_dbm) arrays over
    relays in scene.relay_ids order.
    """
    g_ids = scene.gnb_ids
    r_ids = scene.relay_ids
    n_g, n_r = len(g_ids), len(r_ids)
    p_gnb = tx_power_dbm(ants.gnb, ants.per_pa_dbm)
    el_gnb = elevation_gain_db(ants.gnb)

    tx_gain = np.zeros((n_g, n_r))
    tx_sector = np.zeros((n_g, n_r), dtype=int)
    for gi, g in enumerate(g_ids):
        gain, idx = _best_sector_gain(scene.sites[g].sectors, ("gnb_access",),
                                      drop.gr_ang_from_gnb[gi], ants.gnb.n_azimuth,
                                      ants.floor_rel_db)
        tx_gain[gi] = gain
        tx_sector[gi] = idx

    rx_gain = np.zeros((n_g, n_r))
    rx_sector = np.zeros((n_g, n_r), dtype=int)
    ang_back = wrap_deg(drop.gr_ang_from_gnb + 180.0)
    for ri, r in enumerate(r_ids):
        gain, idx = _best_sector_gain(scene.sites[r].sectors, (ROLE_RELAY_BH,),
                                      ang_back[:, ri], ants.relay_bh.n_azimuth,
                                      ants.floor_rel_db)
        rx_gain[:, ri] = gain
        rx_sector[:, ri] = idx

    rx_dbm = (p_gnb + tx_gain + el_gnb - drop.gr_loss_db
              + rx_gain + elevation_gain_db(ants.relay_bh))
    best_g = np.argmax(rx_dbm, axis=0)
    cols = np.arange(n_r)
    return (g_ids[best_g], tx_sector[best_g, cols], rx_sector[best_g, cols],
            rx_dbm[best_g, cols])


def relay_forward_power_dbm(case: RelayCaseParams, bh_rx_dbm, p_t2_max_dbm):
    """Access-side transmit power the relay can actually radiate."""
    if case.forwarding == DF:
        return np.full_like(np.asarray(bh_rx_dbm, dtype=float), p_t2_max_dbm)
    return np.minimum(p_t2_max_dbm, np.asarray(bh_rx_dbm, dtype=float) + case.g_max_db)


def associate(scene: GridScene, case: RelayCaseParams, drop: DropChannel,
              ants: AntennaSet) -> AssociationMap:
    """Assign every UE its argmax-RX-power server for the given case."""
    n_ue = drop.n_ue
    g_ids = scene.gnb_ids
    r_ids = scene.relay_ids

    donor_gnb, donor_sector, bh_sector, bh_rx = relay_donors(scene, drop, ants)

    p_gnb = tx_power_dbm(ants.gnb, ants.per_pa_dbm)
    el_gnb = elevation_gain_db(ants.gnb)
    ue_rx_gain = 10.0 * math.log10(ants.ue.n_azimuth) + elevation_gain_db(ants.ue)

    rows = []
    row_site = []
    row_sector = []

    gnb_sec = np.zeros((len(g_ids), n_ue), dtype=int)
    for gi, g in enumerate(g_ids):
        gain, idx = _best_sector_gain(scene.sites[g].sectors, ("gnb_access",),
                                      drop.su_ang_from_site[g], ants.gnb.n_azimuth,
                                      ants.floor_rel_db)
        rows.append(p_gnb + gain + el_gnb - drop.su_loss_db[g] + ue_rx_gain)
        gnb_sec[gi] = idx
        row_site.append(g)

    n_gnb_rows = len(rows)
    relay_sec = None
    if case.uses_relays and len(r_ids):
        p_t2 = tx_power_dbm(ants.relay_ac, ants.per_pa_dbm)
        el_ac = elevation_gain_db(ants.relay_ac)
        fwd = relay_forward_power_dbm(case, bh_rx, p_t2)
        broad_pen = ants.broad_loss_db if case.ac_beam == "broad" else 0.0
        relay_sec = np.zeros((len(r_ids), n_ue), dtype=int)
        for ri, r in enumerate(r_ids):
            gain, idx = _best_sector_gain(scene.sites[r].sectors, (ROLE_RELAY_AC,),
                                          drop.su_ang_from_site[r], ants.relay_ac.n_azimuth,
                                          ants.floor_rel_db)
            in_floor = gain < 10.0 * math.log10(ants.relay_ac.n_azimuth) - 1e-9
            gain = np.where(in_floor, gain, gain + broad_pen)
            rows.append(fwd[ri] + gain + el_ac - drop.su_loss_db[r] + ue_rx_gain)
            relay_sec[ri] = idx
            row_site.append(r)

    rx = np.vstack(rows) if rows else np.zeros((0, n_ue))
    best_row = np.argmax(rx, axis=0)
    row_site = np.asarray(row_site)
    serving_site = row_site[best_row]
    is_indirect = best_row >= n_gnb_rows

    serving_sector = np.zeros(n_ue, dtype=int)
    for u in range(n_ue):
        r = best_row[u]
        if r < n_gnb_rows:
            serving_sector[u] = gnb_sec[r, u]
        else:
            serving_sector[u] = relay_sec[r - n_gnb_rows, u]

    return AssociationMap(
        serving_site=serving_site,
        serving_sector=serving_sector,
        is_indirect=is_indirect,
        relay_donor_gnb=donor_gnb,
        relay_donor_sector=donor_sector,
        relay_bh_sector=bh_sector,
        relay_bh_rx_dbm=bh_rx,
    )


def rx_power_dbm(scene: GridScene, drop: DropChannel, ants: AntennaSet,
                 tx_site: int, rx_ue: int, beam: str = "steered",
                 tx_power_override_dbm=None) -> float:
    """Scalar link-budget composition for one transmit site and one UE.

    Sums transmit power, the transmit sector's azimuth gain with its best
    beam toward the UE (steered peak or broad), the fixed elevation gain,
    the propagation loss of the drop (pathloss + diffraction - shadowing)
    and the UE's receive array gain pointed back at the transmitter.
    """
    site = scene.sites[tx_site]
    if site.kind == "gnb":
        arr, roles = ants.gnb, ("gnb_access",)
    else:
        arr, roles = ants.relay_ac, (ROLE_RELAY_AC,)
    p_tx = tx_power_dbm(arr, ants.per_pa_dbm) if tx_power_override_dbm is None else tx_power_override_dbm
    ang = drop.su_ang_from_site[tx_site, rx_ue]
    gain, _ = _best_sector_gain(site.sectors, roles, ang, arr.n_azimuth, ants.floor_rel_db)
    peak = 10.0 * math.log10(arr.n_azimuth)
    if beam == "broad" and gain >= peak - 1e-9:
        gain = gain + ants.broad_loss_db
    ue_gain = 10.0 * math.log10(ants.ue.n_azimuth) + elevation_gain_db(ants.ue)
    return float(p_tx + gain + elevation_gain_db(arr)
                 - drop.su_loss_db[tx_site, rx_ue] + ue_gain)
