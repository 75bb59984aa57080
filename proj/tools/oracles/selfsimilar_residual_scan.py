"""Transport-residual scan over annulus scales at N=256, L=2pi.

The residual is pure spectral-tail asymmetry, so it tracks the bump's
Fourier amplitude at the band edge; widen R1, R2 until < 1e-6.
"""

import numpy as np

from selfsimilar_oracle import phi

N, L = 256, 2 * np.pi
h = L / N
x = np.arange(N) * h - L / 2
X, Y = np.meshgrid(x, x, indexing="ij")
rr = np.hypot(X, Y)
k1 = np.fft.fftfreq(N, d=1.0 / N)
KX, KY = np.meshgrid(k1, k1, indexing="ij")
K2 = KX ** 2 + KY ** 2
inv = np.where(K2 > 0, 1.0 / np.where(K2 > 0, K2, 1.0), 0.0)


def residual(field):
    fh = np.fft.fft2(field)
    u1 = np.fft.ifft2(1j * KY * inv * fh).real
    u2 = np.fft.ifft2(-1j * KX * inv * fh).real
    g1 = np.fft.ifft2(1j * KX * fh).real
    g2 = np.fft.ifft2(1j * KY * fh).real
    adv = u1 * g1 + u2 * g2
    nu = np.sqrt(h * h * (u1 ** 2 + u2 ** 2).sum())
    ng = np.sqrt(h * h * (g1 ** 2 + g2 ** 2).sum())
    na = np.sqrt(h * h * (adv ** 2).sum())
    return na / (nu * ng)


for (R1, R2) in ((0.5, 1.0), (0.8, 1.6), (1.0, 2.0), (1.2, 2.4), (1.4, 2.8)):
    w1g, w2g = phi(rr / R1), phi(rr / R2)
    c_grid = w1g.sum() / w2g.sum()
    field = w1g - c_grid * w2g
    fh = np.fft.fft2(field) / N ** 2
    edge = max(np.abs(fh[N // 2 - 5:N // 2 + 5, :]).max(),
               np.abs(fh[:, N // 2 - 5:N // 2 + 5]).max())
    ell = phi(np.hypot(X / 1.3, 1.3 * Y) / R1) \
        - c_grid * phi(np.hypot(X / 1.3, 1.3 * Y) / R2)
    print("R1=%.1f R2=%.1f: radial=%.3e elliptical=%.3e edge|c_k|=%.2e c=%.10f"
          % (R1, R2, residual(field), residual(ell), edge, c_grid))
