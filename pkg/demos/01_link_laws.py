"""Two-hop and N-hop relay link laws.

Walks through the achievable-rate formulas: full-duplex decode-forward
(bottleneck hop), half-duplex decode-forward (optimal time split), and the
amplify-forward effective SINR with its three loss factors. Ends with the
N-hop generalizations.
"""

import numpy as np

import relaysim as rs

print("=" * 70)
print("1. Decode-forward: full-duplex vs half-duplex")
print("=" * 70)
print(f"{'C_bh':>6} {'C_ac':>6} {'FDDF':>7} {'HDDF':>7} {'alpha':>6} {'beta_bh':>8} {'beta_ac':>8}")
for c_bh, c_ac in [(2.0, 2.0), (4.0, 2.0), (4.0, 4 / 3), (8.0, 1.0), (6.0, 5.9)]:
    fddf = rs.fddf_rate(c_bh, c_ac)
    hddf, split = rs.hddf_rate(c_bh, c_ac)
    print(f"{c_bh:6.2f} {c_ac:6.2f} {fddf:7.3f} {hddf:7.3f} "
          f"{hddf / min(c_bh, c_ac):6.3f} {split.beta_bh:8.3f} {split.beta_ac:8.3f}")
print("\nThe half-duplex rate is always between half of the bottleneck rate")
print("(equal hops) and the full bottleneck rate (one hop far stronger).")

print()
print("=" * 70)
print("2. Amplify-forward repeater: effective downlink SINR")
print("=" * 70)
noise_mw = 10 ** (-77.97 / 10)  # 0.8 GHz floor, 7 dB noise figure
p_t2_max = 10 ** (25.06 / 10)   # 16x4 array at 7 dBm per PA
delta_nf = 10 ** 0.1            # 1 dB

print("Backhaul SINR 28 dB, sweep the access SINR; gain limit 50 vs 70 dB,")
print("broad (-8 dB) vs steered beam. Values are effective SINR in dB.\n")
sinr_bh = 10 ** 2.8
print(f"{'AC SINR dB':>10} {'conv 50dB broad':>16} {'semi 70dB broad':>16} {'smart 70dB steered':>19}")
for ac_db in (0.0, 10.0, 20.0, 30.0):
    sinr_ac = 10 ** (ac_db / 10)
    vals = []
    for g_db, f_bf in ((50.0, 10 ** -0.8), (70.0, 10 ** -0.8), (70.0, 1.0)):
        p = rs.AfParams(g_max=10 ** (g_db / 10), delta_nf=delta_nf,
                        p_t2_max=p_t2_max, sigma1_sq=noise_mw, f_bf=f_bf)
        eff = rs.af_effective_sinr_dl(sinr_bh, sinr_ac, p)
        vals.append(10 * np.log10(max(eff, 1e-12)))
    print(f"{ac_db:10.1f} {vals[0]:16.2f} {vals[1]:16.2f} {vals[2]:19.2f}")

print("\nThe finite-gain loss factor is what separates the 50 dB and 70 dB")
print("repeaters: with a -50 dBm backhaul input, a 50 dB amplifier tops out")
print("at 0 dBm transmit power, 25 dB short of the 25 dBm target.")

p50 = rs.AfParams(g_max=1e5, delta_nf=delta_nf, p_t2_max=p_t2_max,
                  sigma1_sq=noise_mw, f_bf=1.0)
f_p = rs.finite_gain_power_loss(p50, sinr_bh)
f_n = rs.noise_forwarding_loss(sinr_bh, delta_nf)
print(f"  f_P = {f_p:.3e} ({10 * np.log10(f_p):.1f} dB), "
      f"f_n = {f_n:.4f} ({10 * np.log10(f_n):.2f} dB)")

print()
print("=" * 70)
print("3. Uplink direction")
print("=" * 70)
p = rs.AfParams(g_max=1e7, delta_nf=delta_nf, p_t2_max=p_t2_max,
                sigma1_sq=noise_mw, f_bf=1.0)
dl = rs.af_effective_sinr_dl(10 ** 2.8, 10 ** 1.5, p)
ul = rs.af_effective_sinr_ul(10 ** 2.8, 10 ** 1.5, p)
print(f"same hop SINRs (28 dB backhaul, 15 dB access):")
print(f"  downlink effective SINR {10 * np.log10(dl):6.2f} dB")
print(f"  uplink   effective SINR {10 * np.log10(ul):6.2f} dB")
print("the loss factors move to the second hop but the harmonic form stays.")

print()
print("=" * 70)
print("4. N-hop chains")
print("=" * 70)
rates = [6.0, 6.0, 6.0]
print(f"hop capacities {rates}:")
print(f"  full-duplex chain rate {rs.multihop_fddf_rate(rates):.2f} (bottleneck)")
print(f"  half-duplex chain rate {rs.multihop_hddf_rate(rates):.2f} "
      "(adjacent hops share a relay; alternate hops pipeline)")
sinrs = [100.0] * 4
print(f"four amplify-forward hops at 20 dB each: "
      f"{10 * np.log10(rs.multihop_af_sinr(sinrs)):.2f} dB effective "
      "(S/N for N equal hops)")
