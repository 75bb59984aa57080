"""Freeze values matching the production Phi rule exactly:
images |m|_inf <= 16 plus ring tail with Gauss-Legendre 20-node quadrature
of int_0^{pi/4} cos^beta.  These are the numbers the C++ tests pin.
"""

import numpy as np

from frac_split_oracle import c2beta, wrapped_coords

L = 2 * np.pi
REPR = "%.17g"
M_IMG = 16


def ring_integral(beta):
    x, wts = np.polynomial.legendre.leggauss(20)
    a, b = 0.0, np.pi / 4
    t = 0.5 * (b - a) * x + 0.5 * (b + a)
    return 0.5 * (b - a) * np.sum(wts * np.cos(t) ** beta)


def phi_direct(beta, N):
    z1, h = wrapped_coords(N, L)
    Z1, Z2 = np.meshgrid(z1, z1, indexing="ij")
    phi = np.zeros((N, N))
    for m1 in range(-M_IMG, M_IMG + 1):
        for m2 in range(-M_IMG, M_IMG + 1):
            if m1 == 0 and m2 == 0:
                continue
            phi += ((Z1 + L * m1) ** 2 + (Z2 + L * m2) ** 2) ** (-(2 + beta) / 2)
    W = (M_IMG + 0.5) * L
    phi += (8.0 / beta) * W ** (-beta) * ring_integral(beta) / L ** 2
    return phi, h


def freeze(beta, N, R, ks):
    C = float(c2beta(beta))
    z1, h = wrapped_coords(N, L)
    Z1, Z2 = np.meshgrid(z1, z1, indexing="ij")
    rr = np.hypot(Z1, Z2)
    K = np.where(rr > 0, rr, 1.0) ** (-2.0 - beta)
    K[rr == 0] = 0.0
    phi, _ = phi_direct(beta, N)
    w1 = C * h * h * K * ((rr > 0) & (rr <= R))
    w2 = C * h * h * (K * (rr > R) + phi)
    W1 = np.fft.fft2(w1).real
    W2 = np.fft.fft2(w2).real
    S1, S2 = w1.sum(), w2.sum()
    r0 = h / np.sqrt(np.pi)
    ccorr = C * np.pi * r0 ** (2 - beta) / (2 * (2 - beta))
    print(("beta=%g N=%d R=%g: S1=" + REPR + " S2=" + REPR + " ccorr=" + REPR)
          % (beta, N, R, S1, S2, ccorr))
    for (a, b) in ks:
        sten = (4 / h ** 2) * (np.sin(a * h / 2) ** 2 + np.sin(b * h / 2) ** 2)
        v1 = S1 - W1[a % N, b % N] + ccorr * sten
        v2 = S2 - W2[a % N, b % N]
        print(("  k=(%d,%d): m1=" + REPR + " m2=" + REPR + " tot=" + REPR)
              % (a, b, v1, v2, v1 + v2))


print("ring integral I(0.5)=" + REPR % ring_integral(0.5))
print("ring integral I(0.7)=" + REPR % ring_integral(0.7))
print("ring integral I(1.0)=" + REPR % ring_integral(1.0))
freeze(0.5, 16, 1.0, [(1, 0), (2, 3), (5, 5)])
freeze(1.0, 16, 1.0, [(1, 0), (2, 3), (5, 5)])
freeze(0.7, 256, 0.3, [(3, 0), (7, 4)])
