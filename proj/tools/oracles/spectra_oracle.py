"""Frozen-value oracle for the spectral-density / noise-model module.

Computes, by brute force and high-precision arithmetic:
  - spot values of the density families g(r),
  - kappa = (1/4) sum q(k) for the pinned model configurations,
  - covariance matrix Q(z) entries at a reference separation,
  - exact structure-function values 2 Tr[Q(0) - Q(r)].

Run:  python3 tools/oracles/spectra_oracle.py
"""

import mpmath as mp
import numpy as np

from lattice_common import (TWO_PI, build_q, g_flandoli, g_hyponswns,
                            g_kraichnan, g_logeuler, kappa_of, mode_lattice)

mp.mp.dps = 50


def banner(s):
    print("\n## " + s)


banner("density spot values (50 digits)")
v = (1 + mp.mpf(9)) ** -1 * mp.log(mp.e + 3) ** mp.mpf("-1.2")
print("logeuler gamma=0.6 r=3     :", mp.nstr(v, 30))
print("  as double               : %.17g" % float(v))
v = (1 + mp.mpf(4)) ** mp.mpf("-1.25")
print("hyponswns beta=0.5 r=2     : %.17g" % float(v))
v = (1 + mp.mpf("1.7")) ** (-2 - 2 * mp.mpf("0.3"))
print("kraichnan alpha=0.3 r=1.7  : %.17g" % float(v))
v = mp.mpf(25) ** -1 * mp.log(mp.e + 5) ** -2
print("flandoli r=5               : %.17g" % float(v))

banner("kappa / sum(q) for pinned models")
cases = [
    ("logeuler g=1.0  L=2pi N=16", lambda r: g_logeuler(r, 1.0), 16, TWO_PI, None),
    ("logeuler g=1.0  L=2pi N=32", lambda r: g_logeuler(r, 1.0), 32, TWO_PI, None),
    ("logeuler g=1.0  L=2pi N=32 mm=10", lambda r: g_logeuler(r, 1.0), 32, TWO_PI, 10),
    ("logeuler g=1.0  L=2pi N=32 mm=4", lambda r: g_logeuler(r, 1.0), 32, TWO_PI, 4),
    ("logeuler g=1.0  L=2pi N=8  mm=2", lambda r: g_logeuler(r, 1.0), 8, TWO_PI, 2),
    ("hyponswns b=0.5 L=2pi N=32 mm=10", lambda r: g_hyponswns(r, 0.5), 32, TWO_PI, 10),
    ("hyponswns b=0.5 L=1.0 N=16", lambda r: g_hyponswns(r, 0.5), 16, 1.0, None),
    ("kraichnan a=0.3 L=2pi N=16", lambda r: g_kraichnan(r, 0.3), 16, TWO_PI, None),
    ("flandoli        L=2pi N=16", g_flandoli, 16, TWO_PI, None),
]
for name, g, N, L, mm in cases:
    n, k, q = build_q(g, N, L, max_mode=mm)
    print("%-36s modes=%-5d sum_q=%.17g kappa=%.17g"
          % (name, len(q), np.sum(q), kappa_of(q)))

banner("cutoff variant (smooth cutoff exp(-|k|^2/M), M=64)")
n, k, q = build_q(lambda r: g_logeuler(r, 1.0), 16, TWO_PI, cutoff=64.0)
print("logeuler g=1 N=16 cutoff=64: sum_q=%.17g kappa=%.17g" % (np.sum(q), kappa_of(q)))

banner("covariance Q(z), logeuler g=1 L=2pi N=16, z=(0.3,-0.7)")
n, k, q = build_q(lambda r: g_logeuler(r, 1.0), 16, TWO_PI)
z = np.array([0.3, -0.7])
kn2 = k[:, 0] ** 2 + k[:, 1] ** 2
# P_k = I - k k^T/|k|^2
c = np.cos(k @ z)
P11 = 1.0 - k[:, 0] * k[:, 0] / kn2
P12 = -k[:, 0] * k[:, 1] / kn2
P22 = 1.0 - k[:, 1] * k[:, 1] / kn2
Q11 = np.sum(q * P11 * c)
Q12 = np.sum(q * P12 * c)
Q22 = np.sum(q * P22 * c)
print("Q11=%.17g" % Q11)
print("Q12=%.17g" % Q12)
print("Q22=%.17g" % Q22)
kap = kappa_of(q)
print("Q(0) check: 2*kappa=%.17g  Q11(0)=%.17g  Q12(0)=%.3g"
      % (2 * kap, np.sum(q * P11), np.sum(q * P12)))

banner("exact structure function, same model, r=(0.5,0) and (0.07,0)")
for r in (0.5, 0.07):
    c = np.cos(k[:, 0] * r)
    S = 2.0 * np.sum(q * (1.0 - c))  # Tr P_k = 1 in 2D
    print("S(%.2f)=%.17g" % (r, S))

banner("PSD sanity: min eigenvalue of Q(0)-Q(z) over 400 z draws")
rng = np.random.default_rng(7)
worst = np.inf
for _ in range(400):
    z = rng.uniform(-np.pi, np.pi, size=2)
    c = np.cos(k @ z)
    a = np.sum(q * P11 * (1 - c))
    b = np.sum(q * P12 * (1 - c))
    d = np.sum(q * P22 * (1 - c))
    tr, det = a + d, a * d - b * b
    lam_min = tr / 2 - np.sqrt(max(tr * tr / 4 - det, 0.0))
    worst = min(worst, lam_min)
print("min eigenvalue = %.6g  (|Q(0)| ~ %.6g)" % (worst, 2 * kap))
