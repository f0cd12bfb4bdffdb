"""Scenario configuration: JSON in, validated dataclasses out.

An empty JSON object yields the stock scenario (the reference deployment
and its simulation parameters); any field can be overridden by the matching
nested key. Validation errors name the offending field.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .beamforming import AntennaSet, ArrayGeometry
from .cases import CASE_NAMES, RelayCaseParams, default_cases
from .propagation import NoiseParams, PathlossParams
from .relaymath import CapacityLaw
from .topology import GridSpec


class ConfigError(ValueError):
    pass


@dataclass
class ScenarioConfig:
    grid: GridSpec = field(default_factory=GridSpec)
    pathloss: PathlossParams = field(default_factory=PathlossParams)
    noise: NoiseParams = field(default_factory=NoiseParams)
    antennas: AntennaSet = field(default_factory=AntennaSet)
    gnb_arc_deg: float = 90.0
    relay_bh_arc_deg: float = 180.0
    relay_ac_arc_deg: float = 170.0
    cases: dict[str, RelayCaseParams] = field(default_factory=default_cases)
    n_drops: int = 20
    n_slots: int = 100
    seed: int = 1
    n_workers: int = 1
    capacity_cap: Optional[float] = None
    interference_enabled: bool = True
    out_dir: str = "results"
    expected_counts: Optional[tuple[int, int]] = (84, 156)

    @property
    def capacity_law(self) -> CapacityLaw:
        return CapacityLaw(self.capacity_cap)


def default_config() -> ScenarioConfig:
    return ScenarioConfig()


def _apply(dc, overrides: dict, where: str):
    """Rebuild a (frozen) dataclass with overridden fields."""
    names = {f.name for f in dataclasses.fields(dc)}
    for k in overrides:
        if k not in names:
            raise ConfigError(f"{where}.{k}: unknown field")
    try:
        return dataclasses.replace(dc, **overrides)
    except (ValueError, TypeError) as e:
        raise ConfigError(f"{where}: {e}") from e


def infrastructure_counts(spec: GridSpec) -> tuple[int, int]:
    """gNB and relay counts implied by the spec, without building a scene."""
    n_gnb = 0
    for row, _ in enumerate(range(0, spec.n_streets, spec.gnb_street_stride)):
        offset = (row % spec.gnb_avenue_stride) if spec.stagger_gnb_avenues else 0
        n_gnb += len(range(offset, spec.n_avenues, spec.gnb_avenue_stride))
    n_relay = len(range(1, spec.n_streets, spec.relay_street_stride)) \
        * len(range(0, spec.n_avenues, spec.relay_avenue_stride))
    return n_gnb, n_relay


def config_from_dict(doc: dict) -> ScenarioConfig:
    if not isinstance(doc, dict):
        raise ConfigError("top level: expected a JSON object")
    cfg = default_config()
    known = {"grid", "pathloss", "noise", "antennas", "cases", "gnb_arc_deg",
             "relay_bh_arc_deg", "relay_ac_arc_deg", "n_drops", "n_slots",
             "seed", "n_workers", "capacity_cap", "interference_enabled",
             "out_dir", "expected_counts"}
    for k in doc:
        if k not in known:
            raise ConfigError(f"{k}: unknown field")

    if "grid" in doc:
        g = dict(doc["grid"])
        if "area" in g:
            g["area"] = tuple(g["area"])
        cfg.grid = _apply(cfg.grid, g, "grid")
    if "pathloss" in doc:
        cfg.pathloss = _apply(cfg.pathloss, dict(doc["pathloss"]), "pathloss")
    if "noise" in doc:
        cfg.noise = _apply(cfg.noise, dict(doc["noise"]), "noise")
    if "antennas" in doc:
        a = dict(doc["antennas"])
        for key in ("gnb", "relay_bh", "relay_ac", "ue"):
            if key in a:
                shape = a[key]
                spacing = a.get("element_spacing_wl", cfg.antennas.gnb.element_spacing_wl)
                try:
                    a[key] = ArrayGeometry(int(shape[0]), int(shape[1]), spacing)
                except (ValueError, TypeError, IndexError) as e:
                    raise ConfigError(f"antennas.{key}: {e}") from e
        a.pop("element_spacing_wl", None)
        cfg.antennas = _apply(cfg.antennas, a, "antennas")
    for key in ("gnb_arc_deg", "relay_bh_arc_deg", "relay_ac_arc_deg"):
        if key in doc:
            v = float(doc[key])
            if not 0.0 < v <= 360.0:
                raise ConfigError(f"{key}: must be in (0, 360], got {v}")
            setattr(cfg, key, v)
    if "cases" in doc:
        for name, overrides in doc["cases"].items():
            if name not in CASE_NAMES:
                raise ConfigError(f"cases.{name}: unknown case")
            cfg.cases[name] = _apply(cfg.cases[name], dict(overrides), f"cases.{name}")
    for key, typ in (("n_drops", int), ("n_slots", int), ("seed", int), ("n_workers", int)):
        if key in doc:
            v = typ(doc[key])
            if v < 1 and key != "seed":
                raise ConfigError(f"{key}: must be >= 1, got {v}")
            setattr(cfg, key, v)
    if "capacity_cap" in doc:
        v = doc["capacity_cap"]
        if v is not None:
            v = float(v)
            if not v > 0:
                raise ConfigError(f"capacity_cap: must be > 0, got {v}")
        cfg.capacity_cap = v
    if "interference_enabled" in doc:
        cfg.interference_enabled = bool(doc["interference_enabled"])
    if "out_dir" in doc:
        cfg.out_dir = str(doc["out_dir"])
    if "expected_counts" in doc:
        v = doc["expected_counts"]
        cfg.expected_counts = tuple(int(x) for x in v) if v is not None else None

    validate_config(cfg)
    return cfg


def validate_config(cfg: ScenarioConfig):
    if cfg.antennas.broad_loss_db > 0.0:
        raise ConfigError(
            f"antennas.broad_loss_db: beamforming loss must be <= 0 dB, "
            f"got {cfg.antennas.broad_loss_db}")
    if cfg.antennas.per_pa_dbm > 60.0:
        raise ConfigError(f"antennas.per_pa_dbm: implausibly large ({cfg.antennas.per_pa_dbm} dBm)")
    for name, case in cfg.cases.items():
        if case.g_max_db <= 0:
            raise ConfigError(f"cases.{name}.g_max_db: must be > 0")
        if case.delta_nf_db < 0:
            raise ConfigError(f"cases.{name}.delta_nf_db: must be >= 0")
        if case.self_isolation_db < 0:
            raise ConfigError(f"cases.{name}.self_isolation_db: must be >= 0")
    if cfg.expected_counts is not None:
        got = infrastructure_counts(cfg.grid)
        if got != tuple(cfg.expected_counts):
            raise ConfigError(
                f"grid: spec yields {got[0]} gNBs / {got[1]} relays, expected "
                f"{cfg.expected_counts[0]}/{cfg.expected_counts[1]} "
                f"(set expected_counts to null to allow other layouts)")


def load_config(path) -> ScenarioConfig:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"config parse failure: {e}") from e
    return config_from_dict(doc)
