import json

import numpy as np
import pytest

import relaysim as rs
from relaysim.cli import main as cli_main
from relaysim.config import ConfigError, infrastructure_counts
from relaysim.metrics import (CdfSeries, MetricStore, SE_INDIRECT,
                              SINR_DB_INDIRECT, emit_cdfs)

SMALL = {
    "grid": {"area": [1000.0, 720.0], "ue_count": 80},
    "expected_counts": None,
    "n_drops": 1,
    "n_slots": 8,
    "seed": 4,
}


def test_empty_config_gives_stock_scenario():
    cfg = rs.config_from_dict({})
    assert cfg.pathloss.carrier_freq_hz == 28e9
    assert cfg.noise.bandwidth_hz == 0.8e9
    assert cfg.antennas.per_pa_dbm == 7.0
    assert cfg.pathloss.shadow_sigma_ac_db == 8.0
    assert cfg.pathloss.shadow_sigma_bh_db == 4.0
    assert (cfg.grid.avenue_spacing, cfg.grid.street_spacing) == (200.0, 80.0)
    assert (cfg.grid.avenue_width, cfg.grid.street_width) == (14.0, 8.0)
    assert infrastructure_counts(cfg.grid) == (84, 156)
    assert cfg.cases["conventionalRepeater"].g_max_db == 50.0
    assert cfg.cases["semiSmartRepeater"].g_max_db == 70.0
    assert cfg.cases["smartRepeater"].g_max_db == 70.0
    assert cfg.cases["fdRelayNoReuse"].self_isolation_db == 130.0
    assert cfg.cases["conventionalRepeater"].delta_nf_db == 1.0


def test_invalid_broad_loss_names_field():
    with pytest.raises(ConfigError, match="broad_loss_db"):
        rs.config_from_dict({"antennas": {"broad_loss_db": 2.0}})


def test_unknown_fields_rejected():
    with pytest.raises(ConfigError, match="bogus"):
        rs.config_from_dict({"bogus": 1})
    with pytest.raises(ConfigError, match="cases.notACase"):
        rs.config_from_dict({"cases": {"notACase": {}}})
    with pytest.raises(ConfigError, match="grid.wrong"):
        rs.config_from_dict({"grid": {"wrong": 3}})


def test_count_check_guards_grid_edits():
    with pytest.raises(ConfigError, match="grid"):
        rs.config_from_dict({"grid": {"area": [1000.0, 720.0]}})
    cfg = rs.config_from_dict({"grid": {"area": [1000.0, 720.0]},
                               "expected_counts": None})
    assert infrastructure_counts(cfg.grid) == (15, 30)


def test_case_override():
    cfg = rs.config_from_dict({"cases": {"smartRepeater": {"g_max_db": 60.0}}})
    assert cfg.cases["smartRepeater"].g_max_db == 60.0
    with pytest.raises(ConfigError, match="delta_nf_db"):
        rs.config_from_dict({"cases": {"smartRepeater": {"delta_nf_db": -1.0}}})


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        rs.load_config(tmp_path / "nope.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError, match="parse"):
        rs.load_config(bad)
    ok = tmp_path / "ok.json"
    ok.write_text("{}")
    assert rs.load_config(ok).seed == 1


def test_cdf_series():
    s = CdfSeries.from_samples("m", [3.0, 1.0, 2.0])
    assert np.allclose(s.values, [1.0, 2.0, 3.0])
    assert np.allclose(s.probs, [1 / 3, 2 / 3, 1.0])
    assert np.all(np.diff(s.probs) >= 0.0)
    assert s.count == 3


def test_metric_store_merge():
    a, b = MetricStore(), MetricStore()
    a.add("x", [1.0, 2.0])
    b.add("x", [3.0])
    b.add("y", [5.0])
    a.merge(b)
    assert a.count("x") == 3 and a.count("y") == 1
    assert a.count("zzz") == 0


def test_emit_cdfs_files(tmp_path):
    cfg = rs.config_from_dict(SMALL)
    stores = rs.run_experiment(cfg, ["noRepeaterRelay", "smartRepeater"])
    paths = emit_cdfs(stores, tmp_path)
    names = {p.name for p in paths}
    # no indirect UEs -> no indirect files for the bare case
    assert "noRepeaterRelay__sinr_db_direct.csv" in names
    assert "noRepeaterRelay__se_indirect.csv" not in names
    assert "smartRepeater__se_indirect.csv" in names
    assert "summary.csv" in names
    body = (tmp_path / "smartRepeater__sinr_db_direct.csv").read_text().splitlines()
    assert body[0] == "value,cum_prob"
    vals = np.array([float(l.split(",")[0]) for l in body[1:]])
    probs = np.array([float(l.split(",")[1]) for l in body[1:]])
    assert np.all(np.diff(vals) >= 0) and probs[-1] == 1.0
    summary = (tmp_path / "summary.csv").read_text()
    assert "smartRepeater,indirect_fraction" in summary


def test_store_counts_match_population(tmp_path):
    cfg = rs.config_from_dict(SMALL)
    stores = rs.run_experiment(cfg, ["smartRepeater"])
    st = stores["smartRepeater"]
    n_ind = st.count(SINR_DB_INDIRECT)
    assert st.count(SE_INDIRECT) == n_ind
    assert n_ind + st.count("sinr_db_direct") == cfg.grid.ue_count * cfg.n_drops


def test_repeat_run_identical_files(tmp_path):
    for sub in ("a", "b"):
        cfg = rs.config_from_dict(SMALL)
        stores = rs.run_experiment(cfg, ["hdRelayReuse"])
        emit_cdfs(stores, tmp_path / sub)
    for p in sorted((tmp_path / "a").iterdir()):
        q = tmp_path / "b" / p.name
        assert p.read_bytes() == q.read_bytes()


def test_cli_validate_and_run(tmp_path, capsys):
    cfgfile = tmp_path / "c.json"
    cfgfile.write_text(json.dumps(SMALL))
    assert cli_main(["validate", "--config", str(cfgfile)]) == 0
    out = tmp_path / "res"
    rc = cli_main(["run", "--config", str(cfgfile), "--cases",
                   "noRepeaterRelay", "--out", str(out)])
    assert rc == 0
    assert (out / "summary.csv").exists()
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"antennas": {"broad_loss_db": 1.0}}))
    assert cli_main(["validate", "--config", str(bad)]) == 1


def test_cli_export_scene(tmp_path):
    cfgfile = tmp_path / "c.json"
    cfgfile.write_text(json.dumps(SMALL))
    out = tmp_path / "scene.json"
    assert cli_main(["export-scene", "--config", str(cfgfile), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["sites"]) == 45  # 15 gNBs + 30 relays
    assert len(doc["ues"]) == 80


def test_cli_sweep(tmp_path):
    cfgfile = tmp_path / "c.json"
    small = dict(SMALL)
    small["n_slots"] = 4
    cfgfile.write_text(json.dumps(small))
    out = tmp_path / "sweep"
    rc = cli_main(["sweep", "--config", str(cfgfile), "--cases", "smartRepeater",
                   "--param", "antennas.per_pa_dbm", "--values", "4,7",
                   "--out", str(out)])
    assert rc == 0
    assert (out / "antennas_per_pa_dbm=4" / "summary.csv").exists()
    assert (out / "antennas_per_pa_dbm=7" / "summary.csv").exists()
