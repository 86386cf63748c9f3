#!/usr/bin/env python3
"""The degree-H trigonometric approximation of the sawtooth and its
Fejer majorant.

psi has a jump at every integer, so no trigonometric polynomial can chase
it uniformly; the right object is a majorant delta with
|psi*(x) - psi(x)| <= delta(x) pointwise and mean value 1/(2H+2). At
integers the bound is sharp: both sides equal 1/2 exactly. Doubling H
halves the average error but never the worst case at the jump.
"""

import numpy as np

from floorsum import check_vaaler_inequality, delta_majorant, kernel_w, psi_star

print("taper weights W(h/(H+1)) for H = 6:", np.round(kernel_w(np.arange(1, 7) / 7), 6))
print()

grid = np.concatenate([np.linspace(-1.0, 2.0, 20001), np.arange(-1.0, 3.0)])
print(f"{'H':>5} {'max |psi*-psi|':>16} {'max violation':>16} {'min delta':>12} {'mean delta':>12}")
H = 4
while H <= 256:
    rep = check_vaaler_inequality(H, grid)
    approx_err = float(np.max(np.abs(rep.psi_star_values - rep.psi_values)))
    mean_delta = float(np.mean(rep.delta_values))
    print(f"{H:>5} {approx_err:>16.6f} {rep.max_violation:>16.2e} "
          f"{rep.min_delta:>12.2e} {mean_delta:>12.6f}")
    H *= 2

print()
print("equality at the jump (x integer): |0 - (-1/2)| = 1/2 = delta:")
for H in (1, 10, 50):
    print(f"  H={H:>3}: psi*(0) = {psi_star(0.0, H):.1e}, delta(0) = {delta_majorant(0.0, H):.12f}")
