"""Serving-node association and relay footprints.

Every UE attaches to whichever node delivers the most power, with relays
measured at the power they could actually forward. The footprint of an
amplify-forward repeater therefore grows with its stable-gain limit and
with access-beam quality, which is what differentiates the deployment
cases' indirect-UE shares.
"""

import numpy as np

import relaysim as rs
from relaysim.association import associate, relay_donors
from relaysim.channel import DropChannel
from relaysim.experiment import drop_seed

spec = rs.GridSpec()
cases = rs.default_cases()
ants = rs.AntennaSet()
params = rs.PathlossParams()

print("Indirect-UE share per case, mean over 5 drops:")
names = ("conventionalRepeater", "semiSmartRepeater", "smartRepeater",
         "hdRelayNoReuse", "fdRelayNoReuse")
shares = {n: [] for n in names}
for d in range(5):
    s = drop_seed(123, d)
    scene = rs.generate_grid(spec, seed=s)
    chan = DropChannel(scene, params, seed=s)
    for n in names:
        shares[n].append(associate(scene, cases[n], chan, ants).indirect_fraction)
for n in names:
    print(f"  {n:22s} {100 * np.mean(shares[n]):5.1f}%")

print("""
The 50 dB repeater forwards ~25 dB below its power target, the 70 dB ones
~5 dB below; steering the access beam instead of using the fixed broad
pattern buys another 8 dB. Each step extends how far down the street and
into the crossing avenue the relay out-shouts the diffracted base stations.
""")

s = drop_seed(123, 0)
scene = rs.generate_grid(spec, seed=s)
chan = DropChannel(scene, params, seed=s)
donor, _, _, bh_rx = relay_donors(scene, chan, ants)
print("Backhaul link of each relay to its strongest donor:")
print(f"  rx power: median {np.median(bh_rx):.1f} dBm, "
      f"5th pct {np.percentile(bh_rx, 5):.1f}, 95th {np.percentile(bh_rx, 95):.1f}")
dists = [float(np.hypot(*(scene.site_xy[int(g)] - scene.site_xy[int(r)])))
         for g, r in zip(donor, scene.relay_ids)]
print(f"  donor distance: every relay at {min(dists):.0f}..{max(dists):.0f} m "
      "(one block, by construction of the staggered grid)")

a = associate(scene, cases["smartRepeater"], chan, ants)
n_ind = int(a.is_indirect.sum())
print(f"\nsmartRepeater drop: {n_ind} indirect UEs across "
      f"{len(set(int(x) for x in a.serving_site[a.is_indirect]))} relays")
