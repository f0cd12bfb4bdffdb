"""Slot-level downlink round-robin scheduler with interference accounting.

Each gNB sector cycles through its associated UEs (direct ones plus the
indirect UEs reached through relays fed by that sector), one per slot. A
slot's interference ledger holds every transmission scheduled anywhere in
the network that slot, tagged access or backhaul: access transmissions
interfere only with access receivers (UEs) and backhaul transmissions only
with backhaul receivers (relay BH), the one crossover being a full-duplex
relay's own access transmission leaking into its backhaul receiver through
finite isolation. Always-on repeaters sit in every slot's ledger; smart
repeaters and decode-forward relays radiate only when their UE is scheduled.

With spatial reuse enabled (decode-forward cases), the gNB serves the next
direct UE during the fraction of the slot in which it is not transmitting on
the backhaul: the access-phase fraction for a half-duplex relay, or the
tail of the slot after an earlier-finishing backhaul for a full-duplex one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .association import AssociationMap, relay_forward_power_dbm, _best_sector_gain
from .beamforming import AntennaSet, batch_beam_gain_db, elevation_gain_db, tx_power_dbm, ula_factor_db, wrap_deg
from .cases import DF, RelayCaseParams
from .channel import DropChannel
from .propagation import NoiseParams, noise_floor_dbm
from .relaymath import CapacityLaw, ResourceSplit, UNCAPPED
from .topology import GridScene, ROLE_RELAY_AC
from .units import dbm_to_mw


@dataclass
class SlotOutcome:
    slot: int
    gnb_site: int
    sector: int
    direct_ue: Optional[int]
    indirect_ue: Optional[int]
    split: Optional[ResourceSplit]
    effective_sinr: float
    rate: float
    reuse_ue: Optional[int] = None
    reuse_fraction: float = 0.0
    reuse_rate: float = 0.0


@dataclass
class DropResult:
    case: str
    n_slots: int
    is_indirect: np.ndarray
    ue_sched_count: np.ndarray
    ue_sinr_mean_lin: np.ndarray    # mean effective SINR over scheduled slots
    ue_rate_mean: np.ndarray        # mean spectral efficiency over scheduled slots
    ue_beta_ac_mean: np.ndarray     # mean access-phase fraction (hd chains)
    sector_throughput: np.ndarray   # mean served rate per sector over all slots
    indirect_fraction: float


def build_schedule(scene: GridScene, assoc: AssociationMap, n_sectors_per_gnb: int,
                   seed: int) -> list[np.ndarray]:
    """Round-robin service order per gNB sector.

    UEs are listed in id order and the starting point is rotated by the
    seed, so different seeds serve the same multiset of UEs in a different
    phase. Indirect UEs belong to the donor sector feeding their relay.
    """
    n_g = scene.n_gnbs
    gnb_row = {int(g): i for i, g in enumerate(scene.gnb_ids)}
    relay_row = {int(r): i for i, r in enumerate(scene.relay_ids)}
    members: list[list[int]] = [[] for _ in range(n_g * n_sectors_per_gnb)]
    for u in range(len(assoc.serving_site)):
        site = int(assoc.serving_site[u])
        if assoc.is_indirect[u]:
            ri = relay_row[site]
            g = int(assoc.relay_donor_gnb[ri])
            sec = int(assoc.relay_donor_sector[ri])
        else:
            g = site
            sec = int(assoc.serving_sector[u])
        members[gnb_row[g] * n_sectors_per_gnb + sec].append(u)

    rng = np.random.default_rng(np.random.SeedSequence((0x5C4ED, seed)))
    out = []
    for lst in members:
        arr = np.array(sorted(lst), dtype=int)
        if len(arr):
            rot = int(rng.integers(0, len(arr)))
            arr = np.roll(arr, -rot)
        out.append(arr)
    return out


def _capacity_vec(sinr, cap):
    c = np.log2(1.0 + np.maximum(sinr, 0.0))
    if cap is not None:
        c = np.minimum(c, cap)
    return c


def _af_effective_sinr_vec(sinr_bh, sinr_ac, sigma1_mw, g_max_lin, pt2_mw,
                           delta_nf_lin, f_bf):
    """Vector form of relaymath.af_effective_sinr_dl (equality is tested)."""
    p_y1 = sigma1_mw * (sinr_bh + delta_nf_lin)
    f_p = np.minimum(1.0, p_y1 * g_max_lin / pt2_mw)
    f_n = sinr_bh / (delta_nf_lin + sinr_bh)
    s1 = sinr_bh / delta_nf_lin
    s2 = f_bf * f_p * f_n * sinr_ac
    num = s1 * s2
    den = np.maximum(s1 + s2, 1e-300)
    return np.where((s1 > 0.0) & (s2 > 0.0), num / den, 0.0)


class DropSimulator:
    """Simulates the slots of one drop for one relay case."""

    N_SEC = 4  # sectors per gNB

    def __init__(self, scene: GridScene, drop: DropChannel, assoc: AssociationMap,
                 case: RelayCaseParams, ants: AntennaSet, noise: NoiseParams,
                 n_slots: int, seed: int, law: CapacityLaw = UNCAPPED,
                 interference_enabled: bool = True):
        self.scene = scene
        self.drop = drop
        self.assoc = assoc
        self.case = case
        self.ants = ants
        self.n_slots = n_slots
        self.law = law
        self.interference_enabled = interference_enabled

        self.noise_mw = float(dbm_to_mw(noise_floor_dbm(noise)))
        self.p_gnb_dbm = tx_power_dbm(ants.gnb, ants.per_pa_dbm)
        self.p_t2_dbm = tx_power_dbm(ants.relay_ac, ants.per_pa_dbm)
        self.el_gnb = elevation_gain_db(ants.gnb)
        self.el_ac = elevation_gain_db(ants.relay_ac)
        self.el_bh = elevation_gain_db(ants.relay_bh)
        self.ue_el = elevation_gain_db(ants.ue)

        n_ue = drop.n_ue
        n_g = scene.n_gnbs
        self.n_sectors = n_g * self.N_SEC
        self.gnb_row = {int(g): i for i, g in enumerate(scene.gnb_ids)}
        self.relay_row = {int(r): i for i, r in enumerate(scene.relay_ids)}
        self.sector_site = np.repeat(scene.gnb_ids, self.N_SEC)
        self.sector_bore = np.zeros(self.n_sectors)
        self.sector_arc = np.zeros(self.n_sectors)
        for gi, g in enumerate(scene.gnb_ids):
            for k, sec in enumerate(scene.sites[g].sectors):
                self.sector_bore[gi * self.N_SEC + k] = sec.boresight_deg
                self.sector_arc[gi * self.N_SEC + k] = sec.arc_width_deg

        # Per-UE chain description
        self.ue_relay_row = np.full(n_ue, -1, dtype=int)
        for u in range(n_ue):
            if assoc.is_indirect[u]:
                self.ue_relay_row[u] = self.relay_row[int(assoc.serving_site[u])]
        self.serve_dir_deg = np.array(
            [drop.ang_to_site(int(assoc.serving_site[u]), u) for u in range(n_ue)])

        # Signal levels (no interference): direct gNB->UE, relay AC->UE at
        # full power and max array gain, donor->relay backhaul.
        self.s_dbm = np.zeros(n_ue)
        ue_rx = 10.0 * math.log10(ants.ue.n_azimuth) + self.ue_el
        for u in range(n_ue):
            site = int(assoc.serving_site[u])
            if assoc.is_indirect[u]:
                gain, _ = _best_sector_gain(scene.sites[site].sectors, (ROLE_RELAY_AC,),
                                            drop.su_ang_from_site[site, u],
                                            ants.relay_ac.n_azimuth, ants.floor_rel_db)
                self.s_dbm[u] = (self.p_t2_dbm + float(gain) + self.el_ac
                                 - drop.su_loss_db[site, u] + ue_rx)
            else:
                gain, _ = _best_sector_gain(scene.sites[site].sectors, ("gnb_access",),
                                            drop.su_ang_from_site[site, u],
                                            ants.gnb.n_azimuth, ants.floor_rel_db)
                self.s_dbm[u] = (self.p_gnb_dbm + float(gain) + self.el_gnb
                                 - drop.su_loss_db[site, u] + ue_rx)

        self.bh_rx_dbm = assoc.relay_bh_rx_dbm
        self.fwd_dbm = relay_forward_power_dbm(case, self.bh_rx_dbm, self.p_t2_dbm)
        self.f_bf = 1.0 if case.ac_beam == "steered" else 10.0 ** (ants.broad_loss_db / 10.0)
        self.g_max_lin = 10.0 ** (case.g_max_db / 10.0)
        self.delta_nf_lin = 10.0 ** (case.delta_nf_db / 10.0)
        self.pt2_mw = float(dbm_to_mw(self.p_t2_dbm))
        self.self_iso_lin = 10.0 ** (-case.self_isolation_db / 10.0)

        # donor row, donor sector (flat index) and angles per relay
        n_r = scene.n_relays
        self.donor_row = np.array([self.gnb_row[int(g)] for g in assoc.relay_donor_gnb]) \
            if n_r else np.zeros(0, dtype=int)
        self.donor_flat = (self.donor_row * self.N_SEC + assoc.relay_donor_sector) \
            if n_r else np.zeros(0, dtype=int)

        # Duty factor of reuse transmissions: a reuse service occupies only
        # the gNB-idle fraction of the slot, so its ledger energy carries
        # that weight. Estimated interference-free (static per chain) to
        # keep the slot computation single-pass.
        self.reuse_frac0 = np.zeros(n_ue)
        if case.spatial_reuse and case.forwarding == DF:
            ind = self.ue_relay_row >= 0
            if np.any(ind):
                rows = self.ue_relay_row[ind]
                cb0 = np.log2(1.0 + dbm_to_mw(self.bh_rx_dbm[rows]) / self.noise_mw)
                ca0 = np.log2(1.0 + dbm_to_mw(self.s_dbm[ind]) / self.noise_mw)
                if case.half_duplex:
                    f0 = np.where(cb0 + ca0 > 0, cb0 / np.maximum(cb0 + ca0, 1e-300), 0.0)
                else:
                    f0 = np.where(cb0 > 0,
                                  1.0 - np.minimum(cb0, ca0) / np.maximum(cb0, 1e-300), 0.0)
                self.reuse_frac0[ind] = f0
        self.relay_bh_bore = np.array(
            [scene.sites[r].sectors[int(assoc.relay_bh_sector[ri])].boresight_deg
             for ri, r in enumerate(scene.relay_ids)]) if n_r else np.zeros(0)
        self.relay_bh_arc = np.array(
            [scene.sites[r].sectors[int(assoc.relay_bh_sector[ri])].arc_width_deg
             for ri, r in enumerate(scene.relay_ids)]) if n_r else np.zeros(0)
        # AC serving sector of each relay toward a target is found on the fly

        self.schedule = build_schedule(scene, assoc, self.N_SEC, seed)
        self._build_served_matrix()

    # ------------------------------------------------------------------
    def _build_served_matrix(self):
        n_slots, n_sec = self.n_slots, self.n_sectors
        self.served = np.full((n_slots, n_sec), -1, dtype=int)
        self.reuse = np.full((n_slots, n_sec), -1, dtype=int)
        want_reuse = self.case.spatial_reuse and self.case.forwarding == DF
        for sec in range(n_sec):
            order = self.schedule[sec]
            m = len(order)
            if m == 0:
                continue
            pos = np.arange(n_slots) % m
            self.served[:, sec] = order[pos]
            if want_reuse:
                is_dir = self.ue_relay_row[order] < 0
                if np.any(is_dir):
                    nxt = np.full(m, -1, dtype=int)
                    for p in range(m):
                        for step in range(1, m + 1):
                            cand = order[(p + step) % m]
                            if self.ue_relay_row[cand] < 0:
                                nxt[p] = cand
                                break
                    self.reuse[:, sec] = np.where(
                        self.ue_relay_row[order[pos]] >= 0, nxt[pos], -1)

    # ------------------------------------------------------------------
    def _relay_ac_gain_toward(self, relay_rows, steer_deg, broad_mask, target_site_idx, victims_ue):
        """Gain of relay AC transmissions toward victim UEs, (n_tx, n_v).

        A broad beam covers both AC sector arcs at peak + broad_loss_db; a
        steered beam radiates the ULA pattern of whichever AC sector holds
        the steer direction and the floor everywhere else.
        """
        scene, drop, ants = self.scene, self.drop, self.ants
        n_az = ants.relay_ac.n_azimuth
        peak = 10.0 * math.log10(n_az)
        tgt = drop.su_ang_from_site[np.ix_(target_site_idx, victims_ue)]
        gains = np.full(tgt.shape, peak + ants.floor_rel_db)
        for k, r in enumerate(relay_rows):
            site = scene.sites[scene.relay_ids[r]]
            ac_secs = [s for s in site.sectors if s.role == ROLE_RELAY_AC]
            off = np.stack([np.abs(wrap_deg(tgt[k] - s.boresight_deg)) for s in ac_secs])
            arcs = np.array([s.arc_width_deg for s in ac_secs])[:, None]
            if broad_mask[k]:
                in_any = np.any(off <= arcs / 2.0 + 1e-12, axis=0)
                gains[k] = np.where(in_any, peak + ants.broad_loss_db, peak + ants.floor_rel_db)
            else:
                off_steer = [abs(float(wrap_deg(steer_deg[k] - s.boresight_deg))) for s in ac_secs]
                best = int(np.argmin(off_steer))
                sec = ac_secs[best]
                in_arc = off[best] <= sec.arc_width_deg / 2.0 + 1e-12
                du = (np.sin(np.radians(wrap_deg(tgt[k] - sec.boresight_deg)))
                      - math.sin(math.radians(wrap_deg(steer_deg[k] - sec.boresight_deg))))
                pat = ula_factor_db(n_az, ants.relay_ac.element_spacing_wl, du)
                gains[k] = np.where(in_arc, pat, peak + ants.floor_rel_db)
        return gains

    def _ue_rx_gain(self, victims_ue, source_ang_deg):
        """UE receive gain toward interference sources, (n_tx, n_v)."""
        point = self.serve_dir_deg[victims_ue][None, :]
        rel = wrap_deg(source_ang_deg - point)
        du = np.sin(np.radians(rel))
        return ula_factor_db(self.ants.ue.n_azimuth, self.ants.ue.element_spacing_wl, du) + self.ue_el

    # ------------------------------------------------------------------
    def slot_arrays(self, t: int):
        """Simulate one slot; returns per-sector arrays used by run()."""
        scene, drop, ants, case = self.scene, self.drop, self.ants, self.case
        sched = self.served[t]
        active = sched >= 0
        sec_idx = np.flatnonzero(active)
        ues = sched[sec_idx]
        ind_mask = self.ue_relay_row[ues] >= 0
        reuse_ues = self.reuse[t][sec_idx]

        # --- access transmitter table -------------------------------------
        # gNB entries: sectors serving a direct UE, plus reuse service
        g_sec = sec_idx[~ind_mask]
        g_ue = ues[~ind_mask]
        ru_mask = ind_mask & (reuse_ues >= 0)
        ru_sec = sec_idx[ru_mask]
        ru_ue = reuse_ues[ru_mask]
        gtx_sec = np.concatenate([g_sec, ru_sec])
        gtx_ue = np.concatenate([g_ue, ru_ue])
        gtx_site = self.sector_site[gtx_sec]
        f0 = self.reuse_frac0[ues[ru_mask]]
        with np.errstate(divide="ignore"):
            ru_duty_db = np.where(f0 > 0, 10.0 * np.log10(np.maximum(f0, 1e-30)), -400.0)
        gtx_p = np.concatenate([np.full(len(g_sec), self.p_gnb_dbm),
                                self.p_gnb_dbm + ru_duty_db])

        # relay entries
        serving_rows = self.ue_relay_row[ues[ind_mask]]
        serving_ue = ues[ind_mask]
        if case.always_on:
            rtx_rows = np.arange(scene.n_relays)
            rtx_own = np.full(scene.n_relays, -1, dtype=int)
            rtx_own[serving_rows] = serving_ue
            rtx_steer = np.zeros(scene.n_relays)
            rtx_broad = np.ones(scene.n_relays, dtype=bool)
            if case.ac_beam == "steered":  # not used by stock cases
                rtx_broad[serving_rows] = False
        else:
            rtx_rows = serving_rows
            rtx_own = serving_ue.copy()
            rtx_broad = np.full(len(rtx_rows), case.ac_beam == "broad")
            rtx_steer = np.zeros(len(rtx_rows))
        if len(rtx_rows):
            r_sites = scene.relay_ids[rtx_rows]
            own_ok = rtx_own >= 0
            rtx_steer[own_ok] = drop.su_ang_from_site[r_sites[own_ok], rtx_own[own_ok]]

        # --- victims -------------------------------------------------------
        victims = np.unique(np.concatenate([ues, ru_ue])) if len(ru_ue) else np.unique(ues)
        v_index = {int(u): i for i, u in enumerate(victims)}
        i_ue_mw = np.zeros(len(victims))

        if self.interference_enabled and len(victims):
            if len(gtx_sec):
                tgt = drop.su_ang_from_site[np.ix_(gtx_site, victims)]
                steer = drop.su_ang_from_site[gtx_site, gtx_ue][:, None]
                g_tx = batch_beam_gain_db(
                    ants.gnb.n_azimuth, ants.gnb.element_spacing_wl,
                    self.sector_bore[gtx_sec][:, None], self.sector_arc[gtx_sec][:, None],
                    steer, False, ants.broad_loss_db, ants.floor_rel_db, tgt)
                src_ang = wrap_deg(tgt + 180.0)
                rx_g = self._ue_rx_gain(victims, src_ang)
                p = (gtx_p[:, None] + g_tx + self.el_gnb
                     - drop.su_loss_db[np.ix_(gtx_site, victims)] + rx_g)
                own = gtx_ue[:, None] == victims[None, :]
                i_ue_mw += np.sum(np.where(own, 0.0, dbm_to_mw(p)), axis=0)
            if len(rtx_rows):
                r_sites = scene.relay_ids[rtx_rows]
                g_tx = self._relay_ac_gain_toward(rtx_rows, rtx_steer, rtx_broad,
                                                  r_sites, victims)
                tgt = drop.su_ang_from_site[np.ix_(r_sites, victims)]
                rx_g = self._ue_rx_gain(victims, wrap_deg(tgt + 180.0))
                p = (self.fwd_dbm[rtx_rows][:, None] + g_tx + self.el_ac
                     - drop.su_loss_db[np.ix_(r_sites, victims)] + rx_g)
                own = rtx_own[:, None] == victims[None, :]
                i_ue_mw += np.sum(np.where(own, 0.0, dbm_to_mw(p)), axis=0)

        # --- backhaul interference at serving relays ----------------------
        n_ch = int(np.sum(ind_mask))
        i_bh_mw = np.zeros(n_ch)
        if n_ch:
            vic_rows = serving_rows
            if self.interference_enabled:
                btx_g = self.donor_row[serving_rows]          # transmitting gNB rows
                btx_steer = drop.gr_ang_from_gnb[btx_g, serving_rows]
                tgt = drop.gr_ang_from_gnb[np.ix_(btx_g, vic_rows)]
                flat = self.donor_flat[serving_rows]
                bore = self.sector_bore[flat][:, None]
                arc = self.sector_arc[flat][:, None]
                g_tx = batch_beam_gain_db(
                    ants.gnb.n_azimuth, ants.gnb.element_spacing_wl,
                    bore, arc, btx_steer[:, None], False,
                    ants.broad_loss_db, ants.floor_rel_db, tgt)
                # victim relay receive side: BH array pointed at its own donor
                point = wrap_deg(drop.gr_ang_from_gnb[self.donor_row[vic_rows], vic_rows] + 180.0)[None, :]
                src = wrap_deg(tgt + 180.0)
                off_bore = wrap_deg(src - self.relay_bh_bore[vic_rows][None, :])
                in_arc = np.abs(off_bore) <= self.relay_bh_arc[vic_rows][None, :] / 2.0 + 1e-12
                du = np.sin(np.radians(wrap_deg(src - point)))
                rx = ula_factor_db(ants.relay_bh.n_azimuth, ants.relay_bh.element_spacing_wl, du)
                bh_peak = 10.0 * math.log10(ants.relay_bh.n_azimuth)
                rx = np.where(in_arc, rx, bh_peak + ants.floor_rel_db)
                loss = drop.gr_loss_db[np.ix_(btx_g, vic_rows)]
                p = self.p_gnb_dbm + g_tx + self.el_gnb - loss + rx + self.el_bh
                own = serving_rows[:, None] == vic_rows[None, :]
                i_bh_mw += np.sum(np.where(own, 0.0, dbm_to_mw(p)), axis=0)
            if case.forwarding == DF and not case.half_duplex:
                i_bh_mw += dbm_to_mw(self.fwd_dbm[serving_rows]) * self.self_iso_lin

        # --- SINRs and rates ----------------------------------------------
        n = self.noise_mw
        cap = self.law.cap
        v_of = np.array([v_index[int(u)] for u in ues]) if len(ues) else np.zeros(0, int)
        s_mw = dbm_to_mw(self.s_dbm[ues])
        sinr_serv = s_mw / (n + i_ue_mw[v_of])

        rate = np.zeros(len(ues))
        eff = np.zeros(len(ues))
        beta_ac = np.zeros(len(ues))
        c_bh_arr = np.zeros(len(ues))

        dmask = ~ind_mask
        eff[dmask] = sinr_serv[dmask]
        rate[dmask] = _capacity_vec(sinr_serv[dmask], cap)

        if n_ch:
            sinr_ac = sinr_serv[ind_mask]
            sigma1 = n + i_bh_mw
            sinr_bh = dbm_to_mw(self.bh_rx_dbm[serving_rows]) / sigma1
            if case.forwarding == DF:
                c_bh = _capacity_vec(sinr_bh, cap)
                c_ac = _capacity_vec(sinr_ac, cap)
                if case.half_duplex:
                    tot = np.maximum(c_bh + c_ac, 1e-300)
                    r = np.where((c_bh > 0) & (c_ac > 0), c_bh * c_ac / tot, 0.0)
                    b_ac = np.where((c_bh > 0) & (c_ac > 0), c_bh / tot, 0.0)
                    e = np.expm1(r * math.log(2.0))
                else:
                    r = np.minimum(c_bh, c_ac)
                    b_ac = np.ones(n_ch)
                    e = np.minimum(sinr_bh, sinr_ac)
                c_bh_arr[ind_mask] = c_bh
            else:
                e = _af_effective_sinr_vec(sinr_bh, sinr_ac, sigma1, self.g_max_lin,
                                           self.pt2_mw, self.delta_nf_lin, self.f_bf)
                r = _capacity_vec(e, cap)
                b_ac = np.ones(n_ch)
            eff[ind_mask] = e
            rate[ind_mask] = r
            beta_ac[ind_mask] = b_ac

        # --- spatial reuse contribution -------------------------------------
        reuse_frac = np.zeros(len(ues))
        reuse_rate = np.zeros(len(ues))
        if case.spatial_reuse and case.forwarding == DF and len(ru_sec):
            rsel = np.flatnonzero(ru_mask)
            sinr_ru = dbm_to_mw(self.s_dbm[ru_ue]) / (n + i_ue_mw[np.array([v_index[int(u)] for u in ru_ue])])
            if case.half_duplex:
                frac = beta_ac[rsel]
            else:
                cb = c_bh_arr[rsel]
                frac = np.where(cb > 0, 1.0 - rate[rsel] / np.maximum(cb, 1e-300), 0.0)
            reuse_frac[rsel] = frac
            reuse_rate[rsel] = frac * _capacity_vec(sinr_ru, cap)

        return {
            "sec_idx": sec_idx, "ues": ues, "ind_mask": ind_mask,
            "eff": eff, "rate": rate, "beta_ac": beta_ac,
            "reuse_ue": self.reuse[t][sec_idx], "reuse_frac": reuse_frac,
            "reuse_rate": reuse_rate,
            # ledger composition and interference, exposed for inspection
            "relay_tx_rows": rtx_rows, "gnb_tx_sectors": gtx_sec,
            "serving_relay_rows": serving_rows,
            "victims": victims, "i_ue_mw": i_ue_mw, "i_bh_mw": i_bh_mw,
        }

    # ------------------------------------------------------------------
    def slot_outcomes(self, t: int) -> list[SlotOutcome]:
        """One SlotOutcome per active sector, for inspection and tests."""
        a = self.slot_arrays(t)
        out = []
        for k, sec in enumerate(a["sec_idx"]):
            u = int(a["ues"][k])
            ind = bool(a["ind_mask"][k])
            split = None
            if ind and self.case.forwarding == DF and self.case.half_duplex:
                split = ResourceSplit(1.0 - float(a["beta_ac"][k]), float(a["beta_ac"][k]))
            out.append(SlotOutcome(
                slot=t,
                gnb_site=int(self.sector_site[sec]),
                sector=int(sec % self.N_SEC),
                direct_ue=None if ind else u,
                indirect_ue=u if ind else None,
                split=split,
                effective_sinr=float(a["eff"][k]),
                rate=float(a["rate"][k]),
                reuse_ue=int(a["reuse_ue"][k]) if a["reuse_ue"][k] >= 0 else None,
                reuse_fraction=float(a["reuse_frac"][k]),
                reuse_rate=float(a["reuse_rate"][k]),
            ))
        return out

    # ------------------------------------------------------------------
    def run(self) -> DropResult:
        n_ue = self.drop.n_ue
        sinr_sum = np.zeros(n_ue)
        rate_sum = np.zeros(n_ue)
        beta_sum = np.zeros(n_ue)
        count = np.zeros(n_ue, dtype=int)
        sec_rate = np.zeros(self.n_sectors)

        for t in range(self.n_slots):
            a = self.slot_arrays(t)
            ues = a["ues"]
            sinr_sum[ues] += a["eff"]
            rate_sum[ues] += a["rate"]
            beta_sum[ues] += a["beta_ac"]
            count[ues] += 1
            sec_rate[a["sec_idx"]] += a["rate"] + a["reuse_rate"]

        sched = np.maximum(count, 1)
        return DropResult(
            case=self.case.name,
            n_slots=self.n_slots,
            is_indirect=self.ue_relay_row >= 0,
            ue_sched_count=count,
            ue_sinr_mean_lin=np.where(count > 0, sinr_sum / sched, np.nan),
            ue_rate_mean=np.where(count > 0, rate_sum / sched, np.nan),
            ue_beta_ac_mean=np.where(count > 0, beta_sum / sched, np.nan),
            sector_throughput=sec_rate / max(self.n_slots, 1),
            indirect_fraction=self.assoc.indirect_fraction,
        )


def run_drop(scene: GridScene, drop: DropChannel, assoc: AssociationMap,
             case: RelayCaseParams, ants: AntennaSet, noise: NoiseParams,
             n_slots: int, seed: int, law: CapacityLaw = UNCAPPED,
             interference_enabled: bool = True) -> DropResult:
    sim = DropSimulator(scene, drop, assoc, case, ants, noise, n_slots, seed,
                        law, interference_enabled)
    return sim.run()
