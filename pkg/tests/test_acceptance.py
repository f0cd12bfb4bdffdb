"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines as they complete. The multi-seed system-level runs (criteria 5-8)
share one session fixture; everything is deterministic.
"""

import math
import time

import numpy as np
import pytest

import relaysim as rs
from relaysim import relaymath as rm
from relaysim.association import associate
from relaysim.channel import DropChannel
from relaysim.experiment import drop_seed, run_experiment
from relaysim.metrics import emit_cdfs
from relaysim.scheduler import DropSimulator
from oracles import brute_force_link_laws, hddf_grid_search

N_SEEDS = 10
N_SLOTS = 48
ALL_CASES = ("noRepeaterRelay", "conventionalRepeater", "semiSmartRepeater",
             "smartRepeater", "hdRelayNoReuse", "hdRelayReuse",
             "fdRelayNoReuse", "fdRelayReuse")


def report(num: int, desc: str, ok: bool, detail: str = ""):
    line = f"ACCEPTANCE {num:2d} [{'PASS' if ok else 'FAIL'}] {desc}"
    if detail:
        line += f"  ({detail})"
    print(line, flush=True)
    assert ok, line


# ---------------------------------------------------------------------------


def test_criterion_1_formula_oracle_suite():
    rng = np.random.default_rng(101)
    n = 10_000
    t0 = time.time()
    worst = 0.0
    for _ in range(n):
        sinr_bh = 10 ** rng.uniform(-2.0, 4.0)
        sinr_ac = 10 ** rng.uniform(-2.0, 4.0)
        delta = 10 ** rng.uniform(0.0, 0.5)
        g_max = 10 ** rng.uniform(3.0, 8.0)
        f_bf = rng.uniform(0.05, 1.0)
        s1sq = 10 ** rng.uniform(-9.0, -4.0)
        pt2 = 10 ** rng.uniform(0.0, 3.0)

        eq1, eq2, eq3 = brute_force_link_laws(
            sinr_bh, sinr_ac, delta, g_max, f_bf, s1sq, pt2)
        c_bh, c_ac = rm.capacity(sinr_bh), rm.capacity(sinr_ac)
        got1 = rm.fddf_rate(c_bh, c_ac)
        got2, _ = rm.hddf_rate(c_bh, c_ac)
        p = rm.AfParams(g_max=g_max, delta_nf=delta, p_t2_max=pt2,
                        sigma1_sq=s1sq, f_bf=f_bf)
        got3 = rm.af_effective_sinr_dl(sinr_bh, sinr_ac, p)
        for got, want in ((got1, eq1), (got2, eq2), (got3, eq3)):
            rel = abs(got - want) / max(abs(want), 1e-300)
            worst = max(worst, rel)
    dt = time.time() - t0
    report(1, "formula oracle suite (10^4 tuples, 1e-9 rel)",
           worst <= 1e-9 and dt < 5.0, f"worst rel err {worst:.2e}, {dt:.2f}s")


def test_criterion_2_hddf_optimality():
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(1000):
        c1, c2 = 10 ** rng.uniform(-1.0, 1.3, 2)
        rate, _ = rm.hddf_rate(c1, c2)
        best = hddf_grid_search(c1, c2, step=1e-4)
        worst = max(worst, (best - rate) / rate)
    report(2, "half-duplex split optimality vs 1e-4 grid search",
           worst <= 1e-3, f"max grid advantage {worst:.2e} rel")


def test_criterion_3_alpha_bounds():
    rng = np.random.default_rng(103)
    ok = True
    for _ in range(1000):
        c1, c2 = 10 ** rng.uniform(-1.0, 1.5, 2)
        rate, _ = rm.hddf_rate(c1, c2)
        alpha = rate / min(c1, c2)
        ok &= 0.5 <= alpha < 1.0
    for c in (0.5, 1.0, 2.0, 7.25):
        rate, _ = rm.hddf_rate(c, c)
        ok &= rate / c == 0.5
    report(3, "alpha in [0.5, 1) with exact 0.5 at equal rates", ok)


def test_criterion_4_multihop_consistency():
    rng = np.random.default_rng(104)
    ok = True
    for _ in range(300):
        c1, c2 = 10 ** rng.uniform(-1.0, 1.5, 2)
        ok &= rm.multihop_fddf_rate([c1, c2]) == rm.fddf_rate(c1, c2)
        ok &= rm.multihop_hddf_rate([c1, c2]) == rm.hddf_rate(c1, c2)[0]
        s1, s2 = 10 ** rng.uniform(-1.0, 3.0, 2)
        p = rm.AfParams(g_max=1e300, delta_nf=1.0, p_t2_max=1.0, sigma1_sq=1.0)
        f_n = rm.noise_forwarding_loss(s1, 1.0)
        ok &= rm.multihop_af_sinr([s1, f_n * s2]) == pytest.approx(
            rm.af_effective_sinr_dl(s1, s2, p), rel=1e-12)
    worst = 0.0
    for n in range(2, 9):
        s = 13.7
        got = rm.multihop_af_sinr([s] * n)
        worst = max(worst, abs(got - s / n) / (s / n))
    report(4, "N-hop laws consistent with two-hop forms; equal AF hops give S/N",
           ok and worst <= 1e-9, f"worst S/N rel err {worst:.2e}")


# ---------------------------------------------------------------------------
# system-level criteria share one deterministic multi-seed run


@pytest.fixture(scope="module")
def full_runs():
    spec = rs.GridSpec()
    cases = rs.default_cases()
    ants = rs.AntennaSet()
    noise = rs.NoiseParams()
    pl = rs.PathlossParams()
    per_seed = []
    for d in range(N_SEEDS):
        s = drop_seed(1, d)
        scene = rs.generate_grid(spec, seed=s)
        chan = DropChannel(scene, pl, seed=s)
        res = {}
        for name in ALL_CASES:
            a = associate(scene, cases[name], chan, ants)
            res[name] = DropSimulator(scene, chan, a, cases[name], ants, noise,
                                      N_SLOTS, s).run()
        per_seed.append(res)
    return per_seed


def _median_sinr_db(res, mask):
    m = mask & (res.ue_sched_count > 0)
    return 10.0 * math.log10(float(np.median(res.ue_sinr_mean_lin[m])))


def _median_se(res):
    m = res.is_indirect & (res.ue_sched_count > 0)
    return float(np.median(res.ue_rate_mean[m]))


def test_criterion_5_indirect_share():
    # association only, full default scenario
    t0 = time.time()
    spec = rs.GridSpec()
    cases = rs.default_cases()
    ants = rs.AntennaSet()
    pl = rs.PathlossParams()
    shares = {n: [] for n in ("conventionalRepeater", "semiSmartRepeater", "smartRepeater")}
    for d in range(N_SEEDS):
        s = drop_seed(1, d)
        scene = rs.generate_grid(spec, seed=s)
        chan = DropChannel(scene, pl, seed=s)
        for n in shares:
            shares[n].append(associate(scene, cases[n], chan, ants).indirect_fraction)
    dt = time.time() - t0
    means = {n: 100.0 * float(np.mean(v)) for n, v in shares.items()}
    targets = {"conventionalRepeater": 32.0, "semiSmartRepeater": 38.5,
               "smartRepeater": 45.7}
    ok = all(abs(means[n] - targets[n]) <= 5.0 for n in targets) and dt < 600.0
    detail = ", ".join(f"{n.replace('Repeater','')} {means[n]:.1f}% (target {targets[n]})"
                       for n in targets) + f", {dt:.1f}s"
    report(5, "indirect-UE share within +/-5 pp of (32, 38.5, 45.7)", ok, detail)


def test_criterion_6_sinr_case_ordering(full_runs):
    hold = 0
    meds = None
    for res in full_runs:
        gap_mask = res["fdRelayNoReuse"].is_indirect
        meds = {
            "gap": _median_sinr_db(res["noRepeaterRelay"], gap_mask),
            "conv": _median_sinr_db(res["conventionalRepeater"],
                                    res["conventionalRepeater"].is_indirect),
            "semi": _median_sinr_db(res["semiSmartRepeater"],
                                    res["semiSmartRepeater"].is_indirect),
            "smart": _median_sinr_db(res["smartRepeater"],
                                     res["smartRepeater"].is_indirect),
            "fd": _median_sinr_db(res["fdRelayNoReuse"],
                                  res["fdRelayNoReuse"].is_indirect),
        }
        if meds["gap"] < meds["conv"] < meds["semi"] < meds["smart"] <= meds["fd"]:
            hold += 1
    detail = (f"holds {hold}/{N_SEEDS}; last seed medians dB: "
              f"gap {meds['gap']:.1f} < conv {meds['conv']:.1f} < semi {meds['semi']:.1f} "
              f"< smart {meds['smart']:.1f} <= fd {meds['fd']:.1f}")
    report(6, "median indirect effective-SINR ordering across cases",
           hold >= 9, detail)


def test_criterion_7_spectral_efficiency_ordering(full_runs):
    hold = 0
    last = ""
    for res in full_runs:
        smart = _median_se(res["smartRepeater"])
        hd = max(_median_se(res["hdRelayNoReuse"]), _median_se(res["hdRelayReuse"]))
        fd = min(_median_se(res["fdRelayNoReuse"]), _median_se(res["fdRelayReuse"]))
        if hd <= smart <= fd:
            hold += 1
        last = f"hd {hd:.2f} <= smart {smart:.2f} <= fd {fd:.2f}"
    report(7, "indirect spectral-efficiency ordering hd <= smart <= fd",
           hold >= 9, f"holds {hold}/{N_SEEDS}; last seed {last}")


def test_criterion_8_spatial_reuse_gain(full_runs):
    # aggregated gain with interference on
    gains = {"hd": [], "fd": []}
    for res in full_runs:
        gains["hd"].append(np.mean(res["hdRelayReuse"].sector_throughput)
                           - np.mean(res["hdRelayNoReuse"].sector_throughput))
        gains["fd"].append(np.mean(res["fdRelayReuse"].sector_throughput)
                           - np.mean(res["fdRelayNoReuse"].sector_throughput))
    agg_ok = np.mean(gains["hd"]) > 0.0 and np.mean(gains["fd"]) > 0.0

    # oracle form: interference disabled, gain must hold drop by drop
    spec = rs.GridSpec(area=(1000.0, 720.0), ue_count=150)
    cases = rs.default_cases()
    ants = rs.AntennaSet()
    noise = rs.NoiseParams()
    pl = rs.PathlossParams()
    oracle_ok = True
    for d in range(3):
        s = drop_seed(8, d)
        scene = rs.generate_grid(spec, seed=s)
        chan = DropChannel(scene, pl, seed=s)
        for base, reuse in (("hdRelayNoReuse", "hdRelayReuse"),
                            ("fdRelayNoReuse", "fdRelayReuse")):
            t = {}
            for name in (base, reuse):
                a = associate(scene, cases[name], chan, ants)
                t[name] = DropSimulator(scene, chan, a, cases[name], ants, noise,
                                        24, s, interference_enabled=False).run()
            gain = np.mean(t[reuse].sector_throughput) - np.mean(t[base].sector_throughput)
            oracle_ok &= gain >= 0.0
    report(8, "spatial reuse raises mean sector throughput (hd and fd)",
           agg_ok and oracle_ok,
           f"mean gain hd {np.mean(gains['hd']):+.3f}, fd {np.mean(gains['fd']):+.3f} "
           f"b/s/Hz; interference-free oracle per-drop nonnegative: {oracle_ok}")


def test_criterion_9_determinism_across_workers(tmp_path):
    doc = {"grid": {"area": [1000.0, 720.0], "ue_count": 120},
           "expected_counts": None, "n_drops": 2, "n_slots": 10, "seed": 5}
    outputs = []
    for workers, sub in ((1, "w1"), (3, "w3")):
        cfg = rs.config_from_dict(doc)
        cfg.n_workers = workers
        stores = run_experiment(cfg, ["smartRepeater", "hdRelayReuse"])
        paths = emit_cdfs(stores, tmp_path / sub)
        outputs.append({p.name: p.read_bytes() for p in paths})
    same = outputs[0].keys() == outputs[1].keys() and all(
        outputs[0][k] == outputs[1][k] for k in outputs[0])
    report(9, "byte-identical CSVs for worker pool sizes 1 and 3", same,
           f"{len(outputs[0])} files compared")


def test_criterion_10_propagation_unit_checks():
    p = rs.PathlossParams()
    cont = 0.0
    for kind, bp in ((rs.LinkKind.BH, 200.0), (rs.LinkKind.AC, 30.0)):
        lo = rs.pathloss_db(bp * (1 - 1e-12), kind, p)
        hi = rs.pathloss_db(bp * (1 + 1e-12), kind, p)
        cont = max(cont, abs(hi - lo))
    j0 = float(rs.knife_edge_loss_db(0.0))
    ids = np.arange(100_000)
    s = rs.shadow_sample_db(ids, ids + 200_000, rs.LinkKind.AC, 3, p)
    std_err = abs(float(np.std(s)) - 8.0) / 8.0
    ok = cont <= 1e-6 and abs(j0 - 6.03) <= 0.05 and std_err <= 0.02
    report(10, "pathloss continuity, J(0), shadowing spread",
           ok, f"breakpoint jump {cont:.1e} dB, J(0)={j0:.3f} dB, "
               f"shadow std err {100*std_err:.2f}%")
