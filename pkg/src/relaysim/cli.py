"""Command-line front end.

Verbs:
  validate      check a config file and report the resolved scenario
  run           run the experiment and write CDF/summary CSVs
  sweep         re-run the experiment while varying one scalar parameter
  export-scene  dump the generated scene as JSON

Exit code 0 on success, 1 on any error; progress goes to stderr.
"""

from __future__ import annotations

import argparse
import copy
import dataclasses
import logging
import sys
from pathlib import Path

from .config import ConfigError, ScenarioConfig, default_config, load_config, validate_config
from .experiment import build_scene, drop_seed, run_experiment
from .metrics import emit_cdfs
from .topology import scene_to_json

log = logging.getLogger("relaysim")


def _load(args) -> ScenarioConfig:
    cfg = load_config(args.config) if args.config else default_config()
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "drops", None) is not None:
        cfg.n_drops = args.drops
    if getattr(args, "slots", None) is not None:
        cfg.n_slots = args.slots
    if getattr(args, "out", None):
        cfg.out_dir = args.out
    if getattr(args, "workers", None) is not None:
        cfg.n_workers = args.workers
    validate_config(cfg)
    return cfg


def _case_list(cfg: ScenarioConfig, args) -> list[str]:
    if not getattr(args, "cases", None):
        return sorted(cfg.cases.keys())
    names = [c.strip() for c in args.cases.split(",") if c.strip()]
    for n in names:
        if n not in cfg.cases:
            raise ConfigError(f"--cases: unknown case {n!r}")
    return names


def cmd_validate(args) -> int:
    cfg = _load(args)
    print(f"config OK: {len(cfg.cases)} cases, {cfg.n_drops} drops x {cfg.n_slots} slots, "
          f"seed {cfg.seed}")
    return 0


def cmd_run(args) -> int:
    cfg = _load(args)
    cases = _case_list(cfg, args)
    log.info("running cases: %s", ", ".join(cases))
    stores = run_experiment(cfg, cases)
    paths = emit_cdfs(stores, cfg.out_dir)
    log.info("wrote %d files to %s", len(paths), cfg.out_dir)
    print(f"wrote {len(paths)} files to {cfg.out_dir}")
    return 0


def _set_dotted(cfg: ScenarioConfig, dotted: str, value: float):
    parts = dotted.split(".")
    obj = cfg
    for p in parts[:-1]:
        if not hasattr(obj, p):
            raise ConfigError(f"--param: no such field {dotted!r}")
        obj = getattr(obj, p)
    leaf = parts[-1]
    if not hasattr(obj, leaf):
        raise ConfigError(f"--param: no such field {dotted!r}")
    if dataclasses.is_dataclass(obj) and obj is not cfg:
        new = dataclasses.replace(obj, **{leaf: value})
        holder = cfg
        for p in parts[:-2]:
            holder = getattr(holder, p)
        setattr(holder if len(parts) > 1 else cfg, parts[-2] if len(parts) > 1 else leaf, new)
    else:
        setattr(obj, leaf, value)


def cmd_sweep(args) -> int:
    cfg = _load(args)
    cases = _case_list(cfg, args)
    values = [float(v) for v in args.values.split(",")]
    base_out = Path(cfg.out_dir)
    for v in values:
        c = copy.deepcopy(cfg)
        _set_dotted(c, args.param, v)
        validate_config(c)
        c.out_dir = str(base_out / f"{args.param.replace('.', '_')}={v:g}")
        log.info("sweep %s = %g", args.param, v)
        stores = run_experiment(c, cases)
        emit_cdfs(stores, c.out_dir)
        print(f"{args.param}={v:g}: wrote results to {c.out_dir}")
    return 0


def cmd_export_scene(args) -> int:
    cfg = _load(args)
    scene = build_scene(cfg, drop_seed(cfg.seed, 0))
    text = scene_to_json(scene)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
        print(f"scene written to {args.out}")
    else:
        print(text)
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relaysim",
                                 description="Manhattan-grid relay deployment simulator")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p, with_out=True):
        p.add_argument("--config", help="JSON scenario config")
        p.add_argument("--seed", type=int)
        p.add_argument("--drops", type=int)
        p.add_argument("--slots", type=int)
        p.add_argument("--workers", type=int)
        if with_out:
            p.add_argument("--out")

    p = sub.add_parser("validate", help="validate a config file")
    common(p, with_out=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="run the experiment, emit CSVs")
    common(p)
    p.add_argument("--cases", help="comma-separated case names (default: all)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="vary one scalar parameter over a list")
    common(p)
    p.add_argument("--cases")
    p.add_argument("--param", required=True, help="dotted field path, e.g. antennas.per_pa_dbm")
    p.add_argument("--values", required=True, help="comma-separated values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export-scene", help="dump the generated scene as JSON")
    common(p)
    p.set_defaults(func=cmd_export_scene)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr,
                        level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ConfigError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
