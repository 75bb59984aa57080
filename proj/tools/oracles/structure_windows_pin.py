"""Final pinning of the structure-function acceptance windows (freeze run)."""

import numpy as np

from structure_windows_oracle import S_of, collapsed, fit_slope
from lattice_common import g_hyponswns, g_logeuler

print("== hyponswns beta=0.5, N=4096, decade [0.05,0.5] (freeze) ==")
n1, G = collapsed(lambda r: g_hyponswns(r, 0.5), 4096)
rv = np.geomspace(0.05, 0.5, 9)
Sv = S_of(rv, n1, G)
for r, s in zip(rv, Sv):
    print("S(%.17g) = %.17g" % (r, s))
print("slope = %.17g" % fit_slope(rv, Sv))

print("\n== logeuler gamma=1 ratio windows ==")
for N in (1024, 2048):
    n1, G = collapsed(lambda r: g_logeuler(r, 1.0), N)
    for (a, b, m) in ((0.05, 0.15, 9), (0.06, 0.15, 9), (0.05, 0.2, 11), (0.04, 0.12, 9)):
        rv = np.geomspace(a, b, m)
        Sv = S_of(rv, n1, G)
        rho = Sv * np.abs(np.log(rv))
        mono = bool(np.all(np.diff(rho) > 0))
        print("N=%-5d [%.2f,%.2f] ratio=%.5f monotone-up=%s rho0=%.5f rho1=%.5f"
              % (N, a, b, rho.max() / rho.min(), mono, rho[0], rho[-1]))

print("\n== logeuler pinned window freeze: N=1024, [0.04,0.12], 9 pts ==")
n1, G = collapsed(lambda r: g_logeuler(r, 1.0), 1024)
rv = np.geomspace(0.04, 0.12, 9)
Sv = S_of(rv, n1, G)
rho = Sv * np.abs(np.log(rv))
for r, s, p in zip(rv, Sv, rho):
    print("S(%.17g) = %.17g   rho=%.10f" % (r, s, p))
print("ratio = %.17g  monotone-up=%s" % (rho.max() / rho.min(), bool(np.all(np.diff(rho) > 0))))
