"""Per-drop large-scale channel state, precomputed as dense matrices.

Infrastructure sites sit at intersections, so any site-to-UE or site-to-site
canyon route has at most one corner: straight when the endpoints share a
street or an avenue, otherwise a single bend at the intersection of the
site's avenue with the target's street (or the mirrored combination). The
matrix builder below applies the same corner geometry as
:func:`relaysim.topology.street_route`; equivalence between the two paths is
covered by tests.

All losses here are propagation-only (pathloss + diffraction - shadowing);
antenna gains and transmit powers are applied by the association and
scheduler layers.
"""

from __future__ import annotations

import numpy as np

from .propagation import LinkKind, PathlossParams, corner_loss_db, pathloss_db, shadow_sample_db
from .topology import GridScene

_EPS = 1e-9


class DropChannel:
    """Losses and bearing angles between every site and every UE (access
    links) and between every gNB and every relay (backhaul links), for one
    UE drop identified by ``seed``."""

    def __init__(self, scene: GridScene, params: PathlossParams, seed: int):
        self.scene = scene
        self.params = params
        self.seed = seed

        spec = scene.spec
        n_site = len(scene.sites)
        n_ue = len(scene.ues)

        ue_xy = scene.ue_xy
        ue_street, ue_on_street = spec.nearest_street(ue_xy[:, 1]) if n_ue else (np.zeros(0, int), np.zeros(0, bool))
        ue_avenue, ue_on_avenue = spec.nearest_avenue(ue_xy[:, 0]) if n_ue else (np.zeros(0, int), np.zeros(0, bool))
        self.ue_street = ue_street
        self.ue_avenue = ue_avenue

        self.su_loss_db = np.zeros((n_site, n_ue))
        self.su_dist = np.zeros((n_site, n_ue))
        self.su_ang_from_site = np.zeros((n_site, n_ue))

        lam = params.wavelength_m
        for s_idx, site in enumerate(scene.sites):
            if n_ue == 0:
                break
            sx, sy = site.position
            si, sj = site.street_idx, site.avenue_idx
            dx = ue_xy[:, 0] - sx
            dy = ue_xy[:, 1] - sy
            dist = np.maximum(np.hypot(dx, dy), 0.5)
            self.su_dist[s_idx] = dist
            self.su_ang_from_site[s_idx] = np.degrees(np.arctan2(dy, dx))

            los = (ue_on_street & (ue_street == si)) | (ue_on_avenue & (ue_avenue == sj))

            # corner route via the site's avenue to the UE's street
            l_via_street = np.full(n_ue, np.inf)
            m = ue_on_street & ~los
            if np.any(m):
                l_via_street[m] = self._corner_route_loss(
                    sx, sy, ue_xy[m, 0], ue_xy[m, 1],
                    corner_x=spec.avenue_x(sj) + np.sign(ue_xy[m, 0] - sx + _EPS) * spec.avenue_width / 2.0,
                    corner_y=spec.street_y(ue_street[m]) + np.sign(sy - spec.street_y(ue_street[m]) + _EPS) * spec.street_width / 2.0,
                    lam=lam,
                )

            # corner route via the site's street to the UE's avenue
            l_via_avenue = np.full(n_ue, np.inf)
            m = ue_on_avenue & ~los
            if np.any(m):
                l_via_avenue[m] = self._corner_route_loss(
                    sx, sy, ue_xy[m, 0], ue_xy[m, 1],
                    corner_x=spec.avenue_x(ue_avenue[m]) + np.sign(sx - spec.avenue_x(ue_avenue[m]) + _EPS) * spec.avenue_width / 2.0,
                    corner_y=spec.street_y(si) + np.sign(ue_xy[m, 1] - sy + _EPS) * spec.street_width / 2.0,
                    lam=lam,
                )

            loss = np.where(
                los,
                pathloss_db(dist, LinkKind.AC, params),
                np.minimum(l_via_street, l_via_avenue),
            )
            self.su_loss_db[s_idx] = loss

        # shadowing per (site, UE) pair; UE ids offset past site ids
        if n_ue:
            site_ids = np.arange(n_site)[:, None]
            ue_ids = n_site + np.arange(n_ue)[None, :]
            self.su_loss_db -= shadow_sample_db(site_ids, ue_ids, LinkKind.AC, seed, params)

        # backhaul matrix: gNB -> relay
        g_ids = scene.gnb_ids
        r_ids = scene.relay_ids
        n_g, n_r = len(g_ids), len(r_ids)
        self.gr_loss_db = np.zeros((n_g, n_r))
        self.gr_dist = np.zeros((n_g, n_r))
        self.gr_ang_from_gnb = np.zeros((n_g, n_r))
        if n_g and n_r:
            g_xy = scene.site_xy[g_ids]
            r_xy = scene.site_xy[r_ids]
            dx = r_xy[None, :, 0] - g_xy[:, None, 0]
            dy = r_xy[None, :, 1] - g_xy[:, None, 1]
            dist = np.maximum(np.hypot(dx, dy), 0.5)
            self.gr_dist = dist
            self.gr_ang_from_gnb = np.degrees(np.arctan2(dy, dx))

            g_av = np.array([scene.sites[i].avenue_idx for i in g_ids])[:, None]
            g_st = np.array([scene.sites[i].street_idx for i in g_ids])[:, None]
            r_av = np.array([scene.sites[i].avenue_idx for i in r_ids])[None, :]
            r_st = np.array([scene.sites[i].street_idx for i in r_ids])[None, :]
            los = (g_av == r_av) | (g_st == r_st)

            pl = pathloss_db(dist, LinkKind.BH, params)
            # one corner at (relay street x gNB avenue); the mirrored variant
            # has the same leg lengths and deviation, so one suffices.
            cx = scene.spec.avenue_x(np.broadcast_to(g_av, dist.shape)) + np.sign(dx + _EPS) * scene.spec.avenue_width / 2.0
            cy = scene.spec.street_y(np.broadcast_to(r_st, dist.shape)) + np.sign(-dy + _EPS) * scene.spec.street_width / 2.0
            d1 = np.hypot(cx - g_xy[:, None, 0], cy - g_xy[:, None, 1])
            d2 = np.hypot(r_xy[None, :, 0] - cx, r_xy[None, :, 1] - cy)
            theta = self._turn_angles(
                g_xy[:, None, 0], g_xy[:, None, 1], cx, cy,
                r_xy[None, :, 0], r_xy[None, :, 1])
            route_len = d1 + d2
            nlos_loss = pathloss_db(np.maximum(route_len, 0.5), LinkKind.BH, params) \
                + corner_loss_db(theta, d1, d2, lam)
            self.gr_loss_db = np.where(los, pl, nlos_loss)
            self.gr_loss_db -= shadow_sample_db(
                g_ids[:, None], r_ids[None, :], LinkKind.BH, seed, params)

        self.n_site = n_site
        self.n_ue = n_ue

    @staticmethod
    def _turn_angles(ax, ay, px, py, bx, by):
        v1x, v1y = px - ax, py - ay
        v2x, v2y = bx - px, by - py
        n1 = np.maximum(np.hypot(v1x, v1y), 1e-12)
        n2 = np.maximum(np.hypot(v2x, v2y), 1e-12)
        c = np.clip((v1x * v2x + v1y * v2y) / (n1 * n2), -1.0, 1.0)
        return np.arccos(c)

    def _corner_route_loss(self, sx, sy, ux, uy, corner_x, corner_y, lam):
        d1 = np.hypot(corner_x - sx, corner_y - sy)
        d2 = np.hypot(ux - corner_x, uy - corner_y)
        theta = self._turn_angles(sx, sy, corner_x, corner_y, ux, uy)
        route_len = np.maximum(d1 + d2, 0.5)
        return pathloss_db(route_len, LinkKind.AC, self.params) \
            + corner_loss_db(theta, d1, d2, lam)

    def ang_to_site(self, site_idx, ue_idx):
        """Bearing from UE toward site, degrees."""
        a = self.su_ang_from_site[site_idx, ue_idx]
        return (a + 180.0 + 180.0) % 360.0 - 180.0
