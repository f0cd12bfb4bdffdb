"""End-to-end comparison of all eight deployment cases.

Runs a reduced version of the full study (quarter-scale drops so the demo
finishes in under a minute), prints the headline metrics per case, and
writes the CDF files the CLI `run` verb would produce.
"""

import numpy as np

import relaysim as rs
from relaysim.metrics import (SE_INDIRECT, SECTOR_THROUGHPUT, SINR_DB_INDIRECT,
                              emit_cdfs)

cfg = rs.config_from_dict({
    "grid": {"area": [1000.0, 720.0], "ue_count": 160},
    "expected_counts": None,   # quarter-scale grid: 15 gNBs, 30 relays
    "n_drops": 4,
    "n_slots": 40,
    "seed": 9,
})

cases = list(rs.CASE_NAMES)
print(f"running {len(cases)} cases x {cfg.n_drops} drops x {cfg.n_slots} slots ...")
stores = rs.run_experiment(cfg, cases)

print(f"\n{'case':22s} {'indirect%':>9} {'med SINR ind':>13} {'med SE ind':>11} {'mean tput':>10}")
for name in cases:
    st = stores[name]
    ind = 100 * float(np.mean(st.samples("indirect_fraction")))
    med_sinr = (f"{np.median(st.samples(SINR_DB_INDIRECT)):10.1f} dB"
                if st.count(SINR_DB_INDIRECT) else "         --")
    med_se = (f"{np.median(st.samples(SE_INDIRECT)):11.2f}"
              if st.count(SE_INDIRECT) else "         --")
    tput = float(np.mean(st.samples(SECTOR_THROUGHPUT)))
    print(f"{name:22s} {ind:9.1f} {med_sinr:>13} {med_se:>11} {tput:10.2f}")

print("""
Reading the table the way the full study reads its CDFs:
 * repeaters and relays all lift the indirect (coverage-gap) UEs;
 * the smart repeater comes close to the full-duplex relay at a fraction
   of the complexity, and both clearly beat the half-duplex relay;
 * spatial reuse raises sector throughput for both relay duplex modes
   while costing the indirect UEs only a little interference.
""")

paths = emit_cdfs(stores, "demo_results")
print(f"wrote {len(paths)} CSV files to demo_results/ "
      "(value,cum_prob per case and metric, plus summary.csv)")
