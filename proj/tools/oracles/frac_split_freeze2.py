"""Frozen values for the final fractional-split definition.

part1 multiplier: C h^2 sum_{0<|z|<=R} |z|^(-2-b) (1-cos k.z)
                  + ccorr * (4/h^2)(sin^2(k1 h/2) + sin^2(k2 h/2)),
                  ccorr = C pi r0^(2-b) / (2 (2-b)),  r0 = h/sqrt(pi).
part2 multiplier: C h^2 sum_z [K_min 1_{|z|>R} + Phi(z)] (1-cos k.z).
"""

import numpy as np

from frac_split_oracle import c2beta, wrapped_coords
from frac_split_final import phi_grid2, outside_cell_mass

L = 2 * np.pi
REPR = "%.17g"


def multipliers(beta, N, R, M=64):
    C = float(c2beta(beta))
    z1, h = wrapped_coords(N, L)
    Z1, Z2 = np.meshgrid(z1, z1, indexing="ij")
    rr = np.hypot(Z1, Z2)
    K = np.where(rr > 0, rr, 1.0) ** (-2.0 - beta)
    K[rr == 0] = 0.0
    phi, _ = phi_grid2(beta, N, L, M)
    w1 = C * h * h * K * ((rr > 0) & (rr <= R))
    w2 = C * h * h * (K * (rr > R) + phi)
    W1 = np.fft.fft2(w1).real
    W2 = np.fft.fft2(w2).real
    S1, S2 = w1.sum(), w2.sum()
    r0 = h / np.sqrt(np.pi)
    ccorr = C * np.pi * r0 ** (2 - beta) / (2 * (2 - beta))

    def m1(n1, n2):
        sten = (4 / h ** 2) * (np.sin(n1 * h / 2) ** 2 + np.sin(n2 * h / 2) ** 2)
        return S1 - W1[n1 % N, n2 % N] + ccorr * sten

    def m2(n1, n2):
        return S2 - W2[n1 % N, n2 % N]

    return m1, m2, S1, S2, ccorr, h


print("## N=16 R=1 freeze (final definition)")
for beta in (0.5, 1.0):
    m1, m2, S1, S2, ccorr, h = multipliers(beta, 16, 1.0)
    print(("beta=%g: S1=" + REPR + " S2=" + REPR + " ccorr=" + REPR)
          % (beta, S1, S2, ccorr))
    for (a, b) in ((1, 0), (2, 3), (5, 5)):
        v1, v2 = m1(a, b), m2(a, b)
        ex = (a * a + b * b) ** (beta / 2)
        print(("  k=(%d,%d): m1=" + REPR + " m2=" + REPR + " tot=" + REPR +
               "  exact=" + REPR) % (a, b, v1, v2, v1 + v2, ex))

print("\n## split-independence at N=16 beta=1: R=0.45 vs R=1.7 totals")
m1a, m2a, *_ = multipliers(1.0, 16, 0.45)
m1b, m2b, *_ = multipliers(1.0, 16, 1.7)
worst = 0.0
for a in range(-7, 8):
    for b in range(-7, 8):
        if a == 0 and b == 0:
            continue
        ta = m1a(a, b) + m2a(a, b)
        tb = m1b(a, b) + m2b(a, b)
        worst = max(worst, abs(ta - tb) / abs(ta))
print("max rel split difference = %.3e" % worst)

print("\n## N=256 part2 scalar freeze, beta=0.7 R=0.3")
m1, m2, S1, S2, ccorr, h = multipliers(0.7, 256, 0.3, M=32)
print(("S2=" + REPR) % S2)
for (a, b) in ((3, 0), (7, 4)):
    print(("  m2(%d,%d)=" + REPR) % (a, b, m2(a, b)))

print("\n## N=4096 part2 slope re-pin with periodized tail")
N = 4096
h = L / N
i1 = np.arange(N)
i1 = np.where(i1 >= N // 2, i1 - N, i1).astype(np.int64)
cnt = np.zeros(2 * (N // 2) ** 2 + 1, dtype=np.int64)
for row in range(N):
    r2 = i1[row] ** 2 + i1 ** 2
    cnt += np.bincount(r2, minlength=cnt.size)
r2u = np.nonzero(cnt)[0][1:]
rads = np.sqrt(r2u.astype(float)) * h
weights = cnt[r2u].astype(float)
order = np.argsort(rads)
rads_s = rads[order]
for beta in (0.3, 0.7, 1.2):
    C = float(c2beta(beta))
    wk_s = (C * h * h * rads ** (-2.0 - beta) * weights)[order]
    cums = np.cumsum(wk_s[::-1])[::-1]
    T = C * outside_cell_mass(beta, L)
    for (a, b) in ((6 * h, 60 * h), (0.01, 0.1), (8 * h, 80 * h)):
        Rs = np.geomspace(a, b, 8)
        S2s = np.array([cums[np.searchsorted(rads_s, R, side="right")] + T
                        for R in Rs])
        sl = np.polyfit(np.log(Rs), np.log(S2s), 1)[0]
        print("beta=%.1f window=[%.5f,%.5f] slope=%.4f  (continuum 2piC/beta"
              " R^-b at R=%.3f: %.4f vs S2=%.4f)"
              % (beta, a, b, sl, Rs[0],
                 C * 2 * np.pi / beta * Rs[0] ** (-beta), S2s[0]))
