"""Independent brute-force oracles used to pin expected values.

These deliberately re-derive results through a different path than the
library (plain transcription of the link-law algebra, LP solves, graph
enumeration) so the tests do not just compare the implementation with
itself.
"""

import math

import numpy as np
from scipy.optimize import linprog


def brute_force_link_laws(sinr_bh, sinr_ac, delta_nf, g_max, f_bf,
                          sigma1_sq, p_t2_max):
    """Plain transcription of the two-hop rate/SINR algebra.

    Returns (fddf_rate, hddf_rate, af_dl_effective_sinr).
    """
    c_bh = math.log2(1.0 + sinr_bh)
    c_ac = math.log2(1.0 + sinr_ac)
    eq1 = min(c_bh, c_ac)
    eq2 = 1.0 / (1.0 / c_bh + 1.0 / c_ac) if c_bh > 0.0 and c_ac > 0.0 else 0.0

    p_y1 = sigma1_sq * (sinr_bh + delta_nf)
    f_p = min(1.0, p_y1 * g_max / p_t2_max)
    f_n = sinr_bh / (delta_nf + sinr_bh)
    s1 = sinr_bh / delta_nf
    s2 = f_bf * f_p * f_n * sinr_ac
    eq3 = 1.0 / (1.0 / s1 + 1.0 / s2) if s1 > 0.0 and s2 > 0.0 else 0.0
    return eq1, eq2, eq3


def hddf_grid_search(c_bh, c_ac, step=1e-4):
    """Best achievable rate over a brute-force grid of time splits."""
    beta = np.arange(0.0, 1.0 + step / 2, step)
    return float(np.max(np.minimum(beta * c_bh, (1.0 - beta) * c_ac)))


def multihop_hd_lp(rates):
    """Optimal half-duplex chain rate by linear programming.

    Variables are the per-hop active fractions and the common rate R;
    adjacent hops share a relay and cannot be active together, hops further
    apart may overlap.
    """
    n = len(rates)
    c = np.zeros(n + 1)
    c[-1] = -1.0
    a_ub, b_ub = [], []
    for i in range(n):
        row = np.zeros(n + 1)
        row[i] = -rates[i]
        row[-1] = 1.0
        a_ub.append(row)
        b_ub.append(0.0)
    for i in range(n - 1):
        row = np.zeros(n + 1)
        row[i] = 1.0
        row[i + 1] = 1.0
        a_ub.append(row)
        b_ub.append(1.0)
    bounds = [(0.0, 1.0)] * n + [(0.0, None)]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    assert res.success
    return float(res.x[-1])


def knife_edge_reference(nu):
    """Direct evaluation of the knife-edge approximation."""
    if nu <= -0.78:
        return 0.0
    return 6.9 + 20.0 * math.log10(math.sqrt((nu - 0.1) ** 2 + 1.0) + nu - 0.1)
