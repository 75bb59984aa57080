"""Scan bump sharpness s (phi_s(u) = exp(-s/(1-u^2))) and annulus scale for
the transport residual at N=256, L=2pi.  Support must satisfy R2 = 2 R1 < pi.
"""

import numpy as np

N, L = 256, 2 * np.pi
h = L / N
x = np.arange(N) * h - L / 2
X, Y = np.meshgrid(x, x, indexing="ij")
rr = np.hypot(X, Y)
k1 = np.fft.fftfreq(N, d=1.0 / N)
KX, KY = np.meshgrid(k1, k1, indexing="ij")
K2 = KX ** 2 + KY ** 2
inv = np.where(K2 > 0, 1.0 / np.where(K2 > 0, K2, 1.0), 0.0)


def phis(u, s):
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    m = np.abs(u) < 1
    out[m] = np.exp(-s / (1.0 - u[m] ** 2))
    return out


def residual(field):
    fh = np.fft.fft2(field)
    u1 = np.fft.ifft2(1j * KY * inv * fh).real
    u2 = np.fft.ifft2(-1j * KX * inv * fh).real
    g1 = np.fft.ifft2(1j * KX * fh).real
    g2 = np.fft.ifft2(1j * KY * fh).real
    adv = u1 * g1 + u2 * g2
    nu = np.sqrt(h * h * (u1 ** 2 + u2 ** 2).sum())
    ng = np.sqrt(h * h * (g1 ** 2 + g2 ** 2).sum())
    return np.sqrt(h * h * (adv ** 2).sum()) / (nu * ng)


for s in (1.0, 2.0, 3.0, 4.0):
    for R1 in (1.0, 1.2, 1.4):
        R2 = 2 * R1
        w1g, w2g = phis(rr / R1, s), phis(rr / R2, s)
        c_grid = w1g.sum() / w2g.sum()
        field = w1g - c_grid * w2g
        ell = phis(np.hypot(X / 1.3, 1.3 * Y) / R1, s) \
            - c_grid * phis(np.hypot(X / 1.3, 1.3 * Y) / R2, s)
        print("s=%g R1=%.1f: radial=%.3e elliptical=%.3e max|Omega|=%.3g"
              % (s, R1, residual(field), residual(ell), np.abs(field).max()))
