"""Freeze table for the logeuler ratio window: N=2048, r in [0.05,0.15]."""

import numpy as np

from structure_windows_oracle import S_of, collapsed
from lattice_common import g_logeuler

n1, G = collapsed(lambda r: g_logeuler(r, 1.0), 2048)
rv = np.geomspace(0.05, 0.15, 9)
Sv = S_of(rv, n1, G)
rho = Sv * np.abs(np.log(rv))
for r, s, p in zip(rv, Sv, rho):
    print("S(%.17g) = %.17g   rho=%.12f" % (r, s, p))
print("ratio = %.17g" % (rho.max() / rho.min()))
print("monotone-up =", bool(np.all(np.diff(rho) > 0)))
