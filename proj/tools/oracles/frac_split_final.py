"""Final fractional-split kernel definition and frozen values.

Kernel on the torus: K_per(z) = sum_m |z + L m|^(-2-beta)  (z = minimal image).
  part1: C * K_min(z) on 0 < |z| <= R, plus self-cell Laplacian correction.
  part2: C * [K_min(z) 1_{|z|>R} + Phi(z)],  Phi = sum_{m != 0} |z+Lm|^(-2-beta).
All image terms satisfy |z+Lm| >= L/2 > R, so they belong to part2.
For lattice wavenumbers, sum_z h^2 K_per(z)(1-cos k.z) is a quadrature of
the full-plane integral, whose exact value is |k|^beta / C.

Phi is smooth on the cell; computed with images |m|_inf <= M plus an
analytic ring tail (1/L^2) * (8/beta) * W^(-beta) * int_0^{pi/4} cos^beta,
W = (M + 1/2) L.  Dipole terms cancel by lattice symmetry.
"""

import numpy as np
from scipy.integrate import quad

from frac_split_oracle import c2beta, wrapped_coords

TWO_PI = 2 * np.pi
L = TWO_PI


def outside_cell_mass(beta, Lbox):
    # int_{R^2 \ cell} |y|^(-2-beta) dy  (cell = [-L/2, L/2]^2)
    W = Lbox / 2
    I, _ = quad(lambda t: np.cos(t) ** beta, 0.0, np.pi / 4)
    return (8.0 / beta) * W ** (-beta) * I


def phi_grid2(beta, N, Lbox, M):
    # image sum |m|_inf <= M plus analytic ring tail; sum_{|m|>M} |z+Lm|^(-2-b)
    # ~ (1/L^2) int_{|y|_inf > (M+1/2)L}; dipole terms cancel by symmetry.
    z1, h = wrapped_coords(N, Lbox)
    Z1, Z2 = np.meshgrid(z1, z1, indexing="ij")
    phi = np.zeros((N, N))
    for m1 in range(-M, M + 1):
        for m2 in range(-M, M + 1):
            if m1 == 0 and m2 == 0:
                continue
            phi += ((Z1 + Lbox * m1) ** 2 + (Z2 + Lbox * m2) ** 2) ** (-(2 + beta) / 2)
    W = (M + 0.5) * Lbox
    I, _ = quad(lambda t: np.cos(t) ** beta, 0.0, np.pi / 4)
    phi += (8.0 / beta) * W ** (-beta) * I / Lbox ** 2
    return phi, h


print("## Phi convergence (beta=0.3, N=64): M=16 vs M=64")
p16, _ = phi_grid2(0.3, 64, L, 16)
p64, _ = phi_grid2(0.3, 64, L, 64)
print("max |Phi16-Phi64| = %.3e   Phi64 range [%.6g, %.6g]"
      % (np.abs(p16 - p64).max(), p64.min(), p64.max()))
print("lattice mean(Phi)*L^2 = %.8f  vs outside-cell integral = %.8f"
      % (p64.mean() * L * L, outside_cell_mass(0.3, L)))

print("\n## N=128 periodized band study (R=0.5), ccorr candidates")
N = 128
for beta in (0.3, 0.7, 1.0, 1.2):
    C = float(c2beta(beta))
    z1, h = wrapped_coords(N, L)
    Z1, Z2 = np.meshgrid(z1, z1, indexing="ij")
    rr = np.hypot(Z1, Z2)
    phi, _ = phi_grid2(beta, N, L, 32)
    w = np.where(rr > 0, rr, 1.0) ** (-2.0 - beta)
    w[rr == 0] = 0.0
    wtot = (w + phi) * C * h * h
    What = np.fft.fft2(wtot).real
    S = wtot.sum()
    r0 = h / np.sqrt(np.pi)
    cA = C * np.pi * r0 ** (2 - beta) / (2 - beta)
    for name, cc in (("none", 0.0), ("cA  ", cA), ("cA/2", cA / 2)):
        errs = []
        for n1 in range(-10, 11):
            for n2 in range(-10, 11):
                if n1 == 0 and n2 == 0:
                    continue
                k2 = float(n1 * n1 + n2 * n2)
                m = S - What[n1 % N, n2 % N] + cc * k2
                errs.append((m - k2 ** (beta / 2)) / k2 ** (beta / 2))
        errs = np.array(errs)
        print("beta=%.1f ccorr=%s max=%8.5f rms=%8.5f mean=%+8.5f"
              % (beta, name, np.abs(errs).max(), np.sqrt((errs ** 2).mean()),
                 errs.mean()))
    # empirical: fit residual (m_raw - exact) ~ c * k^2 over band
    ks, res = [], []
    for n1 in range(-10, 11):
        for n2 in range(-10, 11):
            if n1 == 0 and n2 == 0:
                continue
            k2 = float(n1 * n1 + n2 * n2)
            m = S - What[n1 % N, n2 % N]
            ks.append(k2)
            res.append(k2 ** (beta / 2) - m)
    cfit = np.dot(ks, res) / np.dot(ks, ks)
    print("beta=%.1f empirical ccorr=%.6e  analytic cA=%.6e  ratio=%.3f"
          % (beta, cfit, cA, cfit / cA))
