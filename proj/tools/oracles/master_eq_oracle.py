"""Frozen-value oracle for the energy-spectrum master equation.

Model: logeuler gamma=1, L=2pi, N=8, hard mode truncation max|n_i|<=2
(24 noise modes). Spectrum lattice: square |n_i| <= 2 (5x5), absorbing
closure: a(k+eta) = 0 outside.

  da(k)/dt = -2 (kappa |k|^2 + nu |k|^beta) a(k)
             + sum_{eta} q(eta) |P_eta k|^2 a(k+eta)

with |P_eta k|^2 = |k|^2 - (k.eta)^2/|eta|^2.

Outputs: exact kappa identity check, rhs values for a hand-built state,
and a reference trajectory integrated by scipy's RK45 at tight tolerance.
"""

import numpy as np
from scipy.integrate import solve_ivp

from lattice_common import build_q, g_logeuler, kappa_of

n_noise, k_noise, q = build_q(lambda r: g_logeuler(r, 1.0), 8, 2 * np.pi, max_mode=2)
kappa = kappa_of(q)
print("model: modes=%d sum_q=%.17g kappa=%.17g" % (len(q), q.sum(), kappa))

print("\n## discrete kappa identity: 2 kappa |k|^2 == sum_eta q |P_eta k|^2")
for kk in ((1, 0), (2, 1), (2, 2)):
    kv = np.array(kk, dtype=float)
    k2 = kv @ kv
    dot = k_noise @ kv
    proj = k2 - dot ** 2 / (k_noise[:, 0] ** 2 + k_noise[:, 1] ** 2)
    rhsum = np.sum(q * proj)
    print("k=%s  2*kappa*|k|^2=%.17g  sum=%.17g  absdiff=%.3g"
          % (kk, 2 * kappa * k2, rhsum, abs(2 * kappa * k2 - rhsum)))

M = 2  # spectrum lattice half-width
side = 2 * M + 1
modes = [(i, j) for i in range(-M, M + 1) for j in range(-M, M + 1)]
index = {m: t for t, m in enumerate(modes)}


def rhs_vec(a, nu, beta):
    out = np.zeros_like(a)
    for (i, j), t in index.items():
        kv = np.array([i, j], dtype=float)
        k2 = kv @ kv
        kb = k2 ** (beta / 2) if k2 > 0 else 0.0
        acc = -2.0 * (kappa * k2 + nu * kb) * a[t]
        for (e1, e2), qe in zip(n_noise, q):
            tgt = (i + e1, j + e2)
            if tgt in index:
                eta2 = float(e1 * e1 + e2 * e2)
                proj = k2 - (kv[0] * e1 + kv[1] * e2) ** 2 / eta2
                acc += qe * proj * a[index[tgt]]
        out[t] = acc
    return out


print("\n## rhs freeze: a = 1 at (1,0), nu=0.3, beta=0.7")
a = np.zeros(len(modes))
a[index[(1, 0)]] = 1.0
r = rhs_vec(a, nu=0.3, beta=0.7)
for kk in ((1, 0), (0, 0), (2, 0), (1, 1), (-1, 0), (2, 1), (0, 1), (-1, -1), (1, -1), (-2, 2)):
    print("rhs%s = %.17g" % (kk, r[index[kk]]))

print("\n## trajectory freeze: a0 = 1 at (1,0) and (-1,0), nu=0, T=0.25")
a0 = np.zeros(len(modes))
a0[index[(1, 0)]] = 1.0
a0[index[(-1, 0)]] = 1.0
sol = solve_ivp(lambda t, y: rhs_vec(y, 0.0, 0.7), (0.0, 0.25), a0,
                method="RK45", rtol=1e-12, atol=1e-15, dense_output=False,
                t_eval=[0.25])
aT = sol.y[:, -1]
for kk in ((1, 0), (2, 0), (1, 1), (0, 2), (2, 2), (0, 0), (-1, 0), (0, 1)):
    print("a_T%s = %.17g" % (kk, aT[index[kk]]))
print("sum a_T = %.17g   (a0 sum = 2; absorbing lattice leaks mass)" % aT.sum())
print("min a_T = %.3g    (nonnegativity)" % aT.min())

print("\n## per-step quasi-equilibrium deficit at the pinned N=32 config")
kap32 = 1.1893225547855408  # logeuler gamma=1, N=32, max_mode=10 (spectra oracle)
dt = 1e-3
for k2 in (1.0, 50.0, 100.0, 200.0):
    x = 2 * kap32 * k2 * dt
    left = x / np.expm1(x)
    mid = x / (2 * np.sinh(x / 2))
    print("|k|^2=%5.0f x=%.4f  left-deficit=%.4f  midpoint-deficit=%.5f"
          % (k2, x, 1 - left, 1 - mid))
