#!/usr/bin/env python3
"""Sample the invariant measures and evaluate their Fourier transforms.

The chaos game pushes i.i.d. uniform digit choices through the symbol
map, so the orbit's empirical measure converges weakly to mu_B.  The
Fourier transform is an infinite product of digit symbols; its exact
zeros are what make orthogonal Fourier frequencies possible.
"""

from fractions import Fraction

import numpy as np

from ifsfourier import chaos_game, empirical_char, get_system, mu_hat_detail, points_to_csv

c4 = get_system("cantor4")
pts = chaos_game(c4.b_view, 100_000, seed=1)
print("cantor4 attractor sample: %d points in [%.4f, %.4f]"
      % (len(pts), pts.min(), pts.max()))
print("  (the attractor is the scale-4 Cantor set inside [0, 2/3])")

for t in (0.1, 0.25, 1.0):
    emp = empirical_char(pts, [t])
    exact = mu_hat_detail(c4, (Fraction(t).limit_denominator(100),)).value
    print("  t=%.2f  empirical %.5f%+.5fi   product %.5f%+.5fi"
          % (t, emp.real, emp.imag, exact.real, exact.imag))

print()
print("Exact zeros of mu_hat (a vanishing product factor):")
for t in (1, 4, 5, 24):
    r = mu_hat_detail(c4, (Fraction(t),))
    print("  mu_hat(%3d): %s" % (t, "exact zero (factor %d)" % r.zero_level
                                 if r.exact_zero else "%.6f in modulus" % abs(r.value)))
print("  24 is not a zero: its base-4 digits are not all 0/1, so e_24 is")
print("  not orthogonal to e_0 and cannot join the spectrum.")

td = get_system("twindragon")
cloud = chaos_game(td.l_view, 200_000, seed=2)
points_to_csv("twindragon_points.csv", cloud)
print()
print("twindragon dual attractor written to twindragon_points.csv "
      "(bounding box %s to %s)" % (np.round(cloud.min(axis=0), 3),
                                   np.round(cloud.max(axis=0), 3)))
