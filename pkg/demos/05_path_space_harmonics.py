#!/usr/bin/env python3
"""Path-space measures and the harmonic partition across W-cycles.

From any start point, the branch walk chooses digit l with probability
W(tau_l z); the probability that the path tail settles into cycle C is
the harmonic function h_C, and the h_C sum to 1 exactly when the
W-cycles capture all path mass.  The Monte Carlo estimate is
cross-checked against the closed form sum |mu_hat(x + k)|^2 over the
cycle's frequencies.
"""

from ifsfourier import (
    estimate_h,
    find_w_cycles,
    get_system,
    h_closed_form,
    lattice_basin_sums,
    weight_from_digits,
)

c4 = get_system("cantor4")
w4 = weight_from_digits(c4.B)
cyc4 = find_w_cycles(c4, 6)
est = estimate_h(w4, c4.l_view, [0.3], cyc4, length=64, count=50_000, seed=1)
print("cantor4 at x=0.3 (single W-cycle {0}):")
print("  Monte Carlo h = %.5f +- %.5f, unclassified %.5f"
      % (est.probabilities[0], est.stderrs[0], est.unclassified))
print("  closed form   = %.7f (depth 12)" % h_closed_form(c4, [0.3], cyc4[0], 12))

td = get_system("twindragon")
wt = weight_from_digits(td.B)
cycles = find_w_cycles(td, 8)
x = (0.3, -0.7)
est = estimate_h(wt, td.l_view, list(x), cycles, length=64, count=50_000, seed=2)
closed, other, coverage = lattice_basin_sums(td, list(x), cycles, radius=30.0,
                                             lattice_scale=5)
print("\ntwindragon at x=%s: nine W-cycles up to period 8" % (x,))
print("  %-10s %-8s %-10s %s" % ("word", "period", "MC", "lattice closed form"))
for c, p, cf in zip(cycles, est.probabilities, closed):
    print("  %-10s %-8d %-10.4f %.4f" % ("".join(map(str, c.word)), c.period, p, cf))
print("  totals: MC %.5f (unclassified %.5f), window coverage %.4f"
      % (est.total, est.unclassified, coverage))
