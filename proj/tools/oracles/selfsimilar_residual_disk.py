"""Same residual scan but with the sampled field projected to the inscribed
spectral disk |k| <= N/2 - 1, completing every angular shell."""

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
disk = K2 <= (N / 2 - 1) ** 2


def residual(field, pad=False):
    fh = np.fft.fft2(field) * disk
    u1h, u2h = 1j * KY * inv * fh, -1j * KX * inv * fh
    g1h, g2h = 1j * KX * fh, 1j * KY * fh
    if not pad:
        u1, u2 = np.fft.ifft2(u1h).real, np.fft.ifft2(u2h).real
        g1, g2 = np.fft.ifft2(g1h).real, np.fft.ifft2(g2h).real
        adv = u1 * g1 + u2 * g2
        na = np.sqrt(h * h * (adv ** 2).sum())
    else:
        M = 2 * N

        def up(ah):
            big = np.zeros((M, M), dtype=complex)
            big[:N // 2, :N // 2] = ah[:N // 2, :N // 2]
            big[:N // 2, -(N // 2):] = ah[:N // 2, -(N // 2):]
            big[-(N // 2):, :N // 2] = ah[-(N // 2):, :N // 2]
            big[-(N // 2):, -(N // 2):] = ah[-(N // 2):, -(N // 2):]
            return np.fft.ifft2(big).real * (M / N) ** 2

        adv = up(u1h) * up(g1h) + up(u2h) * up(g2h)
        na = np.sqrt((L / M) ** 2 * (adv ** 2).sum())
    u1, u2 = np.fft.ifft2(u1h).real, np.fft.ifft2(u2h).real
    g1, g2 = np.fft.ifft2(g1h).real, np.fft.ifft2(g2h).real
    nu = np.sqrt(h * h * (u1 ** 2 + u2 ** 2).sum())
    ng = np.sqrt(h * h * (g1 ** 2 + g2 ** 2).sum())
    return na / (nu * ng)


for (R1, R2) in ((0.8, 1.6), (1.0, 2.0), (1.2, 2.4)):
    w1g, w2g = phi(rr / R1), phi(rr / R2)
    c_grid = w1g.sum() / w2g.sum()
    field = w1g - c_grid * w2g
    ell = phi(np.hypot(X / 1.3, 1.3 * Y) / R1) \
        - c_grid * phi(np.hypot(X / 1.3, 1.3 * Y) / R2)
    print("R1=%.1f R2=%.1f: radial=%.3e padded=%.3e elliptical=%.3e"
          % (R1, R2, residual(field), residual(field, pad=True), residual(ell)))
