"""Experiment orchestration: cases x drops, optional worker pool, metrics.

Infrastructure is identical in every drop; UE positions and shadowing are
re-drawn per drop from a seed derived from (master seed, drop index), so
results are independent of the worker count and of completion order. All
cases of one drop share the same scene and channel, which keeps the
comparison paired and amortizes the channel build.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .association import associate
from .channel import DropChannel
from .config import ScenarioConfig
from .metrics import MetricStore
from .scheduler import DropResult, DropSimulator
from .topology import generate_grid

log = logging.getLogger("relaysim")


def drop_seed(master_seed: int, drop_idx: int) -> int:
    ss = np.random.SeedSequence(entropy=(0xD08, master_seed, drop_idx))
    return int(ss.generate_state(1, dtype=np.uint64)[0] & 0x7FFFFFFFFFFF)


def build_scene(cfg: ScenarioConfig, seed: int):
    return generate_grid(
        cfg.grid, seed=seed,
        gnb_array=(cfg.antennas.gnb.n_azimuth, cfg.antennas.gnb.n_elevation),
        relay_bh_array=(cfg.antennas.relay_bh.n_azimuth, cfg.antennas.relay_bh.n_elevation),
        relay_ac_array=(cfg.antennas.relay_ac.n_azimuth, cfg.antennas.relay_ac.n_elevation),
        gnb_arc_deg=cfg.gnb_arc_deg,
        relay_bh_arc_deg=cfg.relay_bh_arc_deg,
        relay_ac_arc_deg=cfg.relay_ac_arc_deg,
    )


def run_one_drop(cfg: ScenarioConfig, case_names: list[str], drop_idx: int
                 ) -> dict[str, DropResult]:
    """Simulate all requested cases on one drop; paired across cases."""
    seed = drop_seed(cfg.seed, drop_idx)
    scene = build_scene(cfg, seed)
    chan = DropChannel(scene, cfg.pathloss, seed)
    out: dict[str, DropResult] = {}
    for name in case_names:
        case = cfg.cases[name]
        assoc = associate(scene, case, chan, cfg.antennas)
        sim = DropSimulator(scene, chan, assoc, case, cfg.antennas, cfg.noise,
                            cfg.n_slots, seed, cfg.capacity_law,
                            cfg.interference_enabled)
        out[name] = sim.run()
    return out


def run_experiment(cfg: ScenarioConfig, case_names: list[str] | None = None
                   ) -> dict[str, MetricStore]:
    """Run cases x drops and aggregate into one MetricStore per case.

    Deterministic for a given (config, seed): drop seeds do not depend on
    the worker count and merging follows drop order.
    """
    if case_names is None:
        case_names = sorted(cfg.cases.keys())
    for name in case_names:
        if name not in cfg.cases:
            raise KeyError(f"unknown case {name!r}")

    stores = {name: MetricStore() for name in case_names}
    drops = list(range(cfg.n_drops))
    if cfg.n_workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.n_workers) as pool:
            results = list(pool.map(_worker, [(cfg, case_names, d) for d in drops]))
    else:
        results = [run_one_drop(cfg, case_names, d) for d in drops]

    for d, per_case in zip(drops, results):
        for name, res in per_case.items():
            stores[name].add_drop(res)
        log.info("drop %d/%d done", d + 1, cfg.n_drops)
    return stores


def _worker(args):
    cfg, case_names, drop_idx = args
    return run_one_drop(cfg, case_names, drop_idx)
