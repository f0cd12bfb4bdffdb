"""Manhattan-grid scene generation and street-graph routing.

The deployment is a rectangular grid of vertical avenues and horizontal
streets. gNBs sit at intersections on even-index streets at every second
avenue (staggered per street so that every avenue carries gNBs and every
relay finds a donor one block away); relays sit at intersections on
odd-index streets at every avenue. UEs are dropped uniformly over the
street/avenue canyon area. The default spec reproduces the reference
deployment of 84 gNBs and 156 relays.

Coordinates: x east (meters), y north. Azimuth 0 deg = east, 90 deg = north.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict
from typing import Optional

import numpy as np

GNB = "gnb"
RELAY = "relay"

ROLE_GNB_ACCESS = "gnb_access"
ROLE_RELAY_BH = "relay_bh"
ROLE_RELAY_AC = "relay_ac"


@dataclass(frozen=True)
class GridSpec:
    area: tuple[float, float] = (2200.0, 2080.0)
    avenue_spacing: float = 200.0
    street_spacing: float = 80.0
    avenue_width: float = 14.0
    street_width: float = 8.0
    gnb_street_stride: int = 2
    gnb_avenue_stride: int = 2
    relay_street_stride: int = 2
    relay_avenue_stride: int = 1
    ue_count: int = 840
    stagger_gnb_avenues: bool = True

    def __post_init__(self):
        if self.avenue_spacing <= self.avenue_width or self.street_spacing <= self.street_width:
            raise ValueError("road spacing must exceed road width")
        if self.avenue_width <= 0 or self.street_width <= 0:
            raise ValueError("road widths must be > 0")
        strides = (self.gnb_street_stride, self.gnb_avenue_stride,
                   self.relay_street_stride, self.relay_avenue_stride)
        if any(s < 1 for s in strides):
            raise ValueError("strides must be >= 1")
        if self.ue_count < 0:
            raise ValueError("ue_count must be >= 0")

    @property
    def n_avenues(self) -> int:
        return int(math.floor(self.area[0] / self.avenue_spacing + 1e-9)) + 1

    @property
    def n_streets(self) -> int:
        return int(math.floor(self.area[1] / self.street_spacing + 1e-9)) + 1

    def avenue_x(self, j) -> np.ndarray:
        return np.asarray(j) * self.avenue_spacing

    def street_y(self, i) -> np.ndarray:
        return np.asarray(i) * self.street_spacing

    def nearest_street(self, y):
        i = np.clip(np.rint(np.asarray(y) / self.street_spacing).astype(int), 0, self.n_streets - 1)
        on = np.abs(np.asarray(y) - self.street_y(i)) <= self.street_width / 2.0 + 1e-9
        return i, on

    def nearest_avenue(self, x):
        j = np.clip(np.rint(np.asarray(x) / self.avenue_spacing).astype(int), 0, self.n_avenues - 1)
        on = np.abs(np.asarray(x) - self.avenue_x(j)) <= self.avenue_width / 2.0 + 1e-9
        return j, on

    def in_canyon(self, x, y) -> bool:
        _, on_s = self.nearest_street(y)
        _, on_a = self.nearest_avenue(x)
        return bool(np.logical_or(on_s, on_a))


@dataclass(frozen=True)
class Sector:
    boresight_deg: float
    role: str
    array_shape: tuple[int, int]
    arc_width_deg: float = 90.0


@dataclass(frozen=True)
class NodeSite:
    id: int
    kind: str
    position: tuple[float, float]
    street_idx: int
    avenue_idx: int
    sectors: tuple[Sector, ...]


@dataclass(frozen=True)
class UeSite:
    id: int
    position: tuple[float, float]


@dataclass
class GridScene:
    spec: GridSpec
    sites: list[NodeSite]
    ues: list[UeSite]
    seed: int = 0
    # derived arrays, filled in __post_init__
    site_xy: np.ndarray = field(default=None, repr=False)
    ue_xy: np.ndarray = field(default=None, repr=False)
    gnb_ids: np.ndarray = field(default=None, repr=False)
    relay_ids: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.site_xy = np.array([s.position for s in self.sites], dtype=float)
        self.ue_xy = (np.array([u.position for u in self.ues], dtype=float)
                      if self.ues else np.zeros((0, 2)))
        kinds = np.array([s.kind for s in self.sites])
        self.gnb_ids = np.flatnonzero(kinds == GNB)
        self.relay_ids = np.flatnonzero(kinds == RELAY)

    @property
    def n_gnbs(self) -> int:
        return len(self.gnb_ids)

    @property
    def n_relays(self) -> int:
        return len(self.relay_ids)


# Default sector layouts. gNBs tile the circle with four 90-degree sectors;
# relay backhaul sectors face north/south and access sectors east/west along
# the street. Arc widths for relays are widened so a relay covers the street
# canyon and reaches through its intersection into the crossing avenue.
GNB_SECTOR_BORESIGHTS = (0.0, 90.0, 180.0, 270.0)
RELAY_BH_BORESIGHTS = (90.0, 270.0)
RELAY_AC_BORESIGHTS = (0.0, 180.0)


def _gnb_sectors(array_shape, arc_deg):
    return tuple(Sector(b, ROLE_GNB_ACCESS, array_shape, arc_deg) for b in GNB_SECTOR_BORESIGHTS)


def _relay_sectors(bh_shape, ac_shape, bh_arc_deg, ac_arc_deg):
    bh = tuple(Sector(b, ROLE_RELAY_BH, bh_shape, bh_arc_deg) for b in RELAY_BH_BORESIGHTS)
    ac = tuple(Sector(b, ROLE_RELAY_AC, ac_shape, ac_arc_deg) for b in RELAY_AC_BORESIGHTS)
    return bh + ac


def generate_grid(
    spec: GridSpec,
    seed: int = 0,
    gnb_array=(16, 4),
    relay_bh_array=(4, 1),
    relay_ac_array=(16, 4),
    gnb_arc_deg: float = 90.0,
    relay_bh_arc_deg: float = 180.0,
    relay_ac_arc_deg: float = 170.0,
) -> GridScene:
    """Build the scene: infrastructure is a pure function of the spec, UE
    positions are drawn from ``seed``. Same spec and seed -> identical scene."""
    sites: list[NodeSite] = []
    nid = 0

    # gNBs on even-index streets; staggered avenue offset per street row.
    for row, i in enumerate(range(0, spec.n_streets, spec.gnb_street_stride)):
        offset = (row % spec.gnb_avenue_stride) if spec.stagger_gnb_avenues else 0
        for j in range(offset, spec.n_avenues, spec.gnb_avenue_stride):
            pos = (float(spec.avenue_x(j)), float(spec.street_y(i)))
            sites.append(NodeSite(nid, GNB, pos, i, j, _gnb_sectors(gnb_array, gnb_arc_deg)))
            nid += 1

    n_gnbs = nid
    if n_gnbs == 0:
        raise ValueError("grid spec produces zero gNBs")

    # Relays on odd-index streets at every avenue (per stride).
    for i in range(1, spec.n_streets, spec.relay_street_stride):
        for j in range(0, spec.n_avenues, spec.relay_avenue_stride):
            pos = (float(spec.avenue_x(j)), float(spec.street_y(i)))
            sectors = _relay_sectors(relay_bh_array, relay_ac_array,
                                     relay_bh_arc_deg, relay_ac_arc_deg)
            sites.append(NodeSite(nid, RELAY, pos, i, j, sectors))
            nid += 1

    ues = _drop_ues(spec, seed)
    return GridScene(spec=spec, sites=sites, ues=ues, seed=seed)


def _drop_ues(spec: GridSpec, seed: int) -> list[UeSite]:
    """Rejection-sample UE positions uniformly over the canyon area."""
    rng = np.random.default_rng(np.random.SeedSequence((0x5EED, seed)))
    ax, ay = spec.area
    positions = []
    while len(positions) < spec.ue_count:
        n_need = spec.ue_count - len(positions)
        x = rng.uniform(0.0, ax, size=4 * n_need + 16)
        y = rng.uniform(0.0, ay, size=4 * n_need + 16)
        _, on_s = spec.nearest_street(y)
        _, on_a = spec.nearest_avenue(x)
        ok = np.logical_or(on_s, on_a)
        for xi, yi in zip(x[ok], y[ok]):
            positions.append((float(xi), float(yi)))
            if len(positions) == spec.ue_count:
                break
    return [UeSite(k, p) for k, p in enumerate(positions)]


# ---------------------------------------------------------------------------
# Street-graph routing


@dataclass(frozen=True)
class Corner:
    position: tuple[float, float]
    d_before: float
    d_after: float
    deviation_rad: float


@dataclass(frozen=True)
class Route:
    length_m: float
    corners: tuple[Corner, ...]

    @property
    def n_corners(self) -> int:
        return len(self.corners)


def _memberships(spec: GridSpec, p) -> list[tuple[str, int]]:
    """Canyons containing the point: [('street', i)] and/or [('avenue', j)]."""
    x, y = float(p[0]), float(p[1])
    out = []
    i, on_s = spec.nearest_street(y)
    if on_s:
        out.append(("street", int(i)))
    j, on_a = spec.nearest_avenue(x)
    if on_a:
        out.append(("avenue", int(j)))
    return out


def _turn_angle(a, p, b) -> float:
    """Deviation of the polyline a->p->b from a straight line, in radians."""
    v1 = np.asarray(p, dtype=float) - np.asarray(a, dtype=float)
    v2 = np.asarray(b, dtype=float) - np.asarray(p, dtype=float)
    n1 = np.hypot(*v1)
    n2 = np.hypot(*v2)
    if n1 < 1e-12 or n2 < 1e-12:
        return 0.0
    c = float(np.dot(v1, v2) / (n1 * n2))
    return math.acos(max(-1.0, min(1.0, c)))


def _sgn(v: float) -> float:
    return 1.0 if v >= 0.0 else -1.0


def _corner_point(spec: GridSpec, street_i: int, avenue_j: int,
                  from_side_x: float, to_side_y: float) -> tuple[float, float]:
    """Building corner of intersection (street_i, avenue_j). ``from_side_x``
    picks the avenue flank (+1 east), ``to_side_y`` the street flank."""
    return (
        float(spec.avenue_x(avenue_j)) + _sgn(from_side_x) * spec.avenue_width / 2.0,
        float(spec.street_y(street_i)) + _sgn(to_side_y) * spec.street_width / 2.0,
    )


def _one_corner_route(spec, a, b, street_i, avenue_j) -> Route:
    """Route from a (on street_i) along the street, turning once at the
    intersection with avenue_j, then along the avenue to b. The corner sits
    at the building corner flanking the turn, so nearly-straight paths
    through an intersection get a small deviation angle."""
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    p = _corner_point(spec, street_i, avenue_j,
                      ax - spec.avenue_x(avenue_j),
                      by - spec.street_y(street_i))
    d1 = math.hypot(p[0] - ax, p[1] - ay)
    d2 = math.hypot(bx - p[0], by - p[1])
    theta = _turn_angle(a, p, b)
    return Route(d1 + d2, (Corner(p, d1, d2, theta),))


def _two_corner_route(spec, a, b, kind: str, a_idx: int, b_idx: int, via: int) -> Route:
    """Route between two parallel canyons through one crossing road."""
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    if kind == "street":  # via an avenue
        xv = float(spec.avenue_x(via))
        p1 = _corner_point(spec, a_idx, via, ax - xv, by - ay)
        p2 = _corner_point(spec, b_idx, via, bx - xv, ay - by)
    else:  # two avenues via a street
        ys = float(spec.street_y(via))
        p1 = (float(spec.avenue_x(a_idx)) + _sgn(bx - ax) * spec.avenue_width / 2.0,
              float(spec.street_y(via)) + _sgn(ay - ys) * spec.street_width / 2.0)
        p2 = (float(spec.avenue_x(b_idx)) + _sgn(ax - bx) * spec.avenue_width / 2.0,
              float(spec.street_y(via)) + _sgn(by - ys) * spec.street_width / 2.0)
    d1 = math.hypot(p1[0] - ax, p1[1] - ay)
    d2 = math.hypot(p2[0] - p1[0], p2[1] - p1[1])
    d3 = math.hypot(bx - p2[0], by - p2[1])
    c1 = Corner(p1, d1, d2, _turn_angle(a, p1, p2))
    c2 = Corner(p2, d2, d3, _turn_angle(p1, p2, b))
    return Route(d1 + d2 + d3, (c1, c2))


def street_route(a, b, scene: GridScene) -> Route:
    """Shortest rectilinear canyon route from a to b.

    Zero corners when the points share a canyon; one corner between a street
    point and an avenue point; two corners between parallel roads. Raises
    ValueError if either point lies outside every canyon.
    """
    spec = scene.spec
    mem_a = _memberships(spec, a)
    mem_b = _memberships(spec, b)
    if not mem_a or not mem_b:
        raise ValueError("point outside street/avenue canyons")

    candidates: list[Route] = []
    for ka, ia in mem_a:
        for kb, ib in mem_b:
            if ka == kb and ia == ib:
                length = math.hypot(b[0] - a[0], b[1] - a[1])
                candidates.append(Route(length, ()))
            elif ka != kb:
                if ka == "street":
                    candidates.append(_one_corner_route(spec, a, b, ia, ib))
                else:
                    candidates.append(_one_corner_route_av(spec, a, b, ib, ia))
            else:
                # parallel roads: try every crossing road, keep the shortest
                n_via = spec.n_avenues if ka == "street" else spec.n_streets
                best: Optional[Route] = None
                for via in range(n_via):
                    r = _two_corner_route(spec, a, b, ka, ia, ib, via)
                    if best is None or r.length_m < best.length_m - 1e-9:
                        best = r
                if best is not None:
                    candidates.append(best)

    candidates.sort(key=lambda r: (r.n_corners, r.length_m))
    return candidates[0]


def _one_corner_route_av(spec, a, b, street_i, avenue_j) -> Route:
    """a on an avenue, b on a street: one corner at (street_i, avenue_j)
    where street_i is b's street and avenue_j is a's avenue."""
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    p = (
        float(spec.avenue_x(avenue_j)) + _sgn(bx - spec.avenue_x(avenue_j)) * spec.avenue_width / 2.0,
        float(spec.street_y(street_i)) + _sgn(ay - spec.street_y(street_i)) * spec.street_width / 2.0,
    )
    d1 = math.hypot(p[0] - ax, p[1] - ay)
    d2 = math.hypot(bx - p[0], by - p[1])
    return Route(d1 + d2, (Corner(p, d1, d2, _turn_angle(a, p, b)),))


# ---------------------------------------------------------------------------
# JSON round trip for golden tests


def scene_to_json(scene: GridScene) -> str:
    doc = {
        "spec": asdict(scene.spec),
        "seed": scene.seed,
        "sites": [
            {
                "id": s.id,
                "kind": s.kind,
                "position": list(s.position),
                "street_idx": s.street_idx,
                "avenue_idx": s.avenue_idx,
                "sectors": [asdict(sec) for sec in s.sectors],
            }
            for s in scene.sites
        ],
        "ues": [{"id": u.id, "position": list(u.position)} for u in scene.ues],
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def scene_from_json(text: str) -> GridScene:
    doc = json.loads(text)
    spec_d = dict(doc["spec"])
    spec_d["area"] = tuple(spec_d["area"])
    spec = GridSpec(**spec_d)
    sites = []
    for s in doc["sites"]:
        sectors = tuple(
            Sector(sec["boresight_deg"], sec["role"], tuple(sec["array_shape"]),
                   sec["arc_width_deg"])
            for sec in s["sectors"]
        )
        sites.append(NodeSite(s["id"], s["kind"], tuple(s["position"]),
                              s["street_idx"], s["avenue_idx"], sectors))
    ues = [UeSite(u["id"], tuple(u["position"])) for u in doc["ues"]]
    return GridScene(spec=spec, sites=sites, ues=ues, seed=doc.get("seed", 0))
