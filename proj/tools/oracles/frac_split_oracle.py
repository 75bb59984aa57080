"""Frozen-value oracle for the real-space fractional-Laplacian split.

Lattice operator (grid spacing h = L/N, minimal-image distance |z|):
  part1 f(x) = C * sum_{0<|z|<=R} h^2 |z|^{-2-beta} (f(x) - f(x-z))
  part2 f(x) = C * sum_{|z|>R}    h^2 |z|^{-2-beta} (f(x) - f(x-z))
  C = C(2,beta) = 4^{beta/2} Gamma(1+beta/2) / (pi |Gamma(-beta/2)|)

Fourier multipliers: m_part(k) = C * sum_z w(z) (1 - cos(k.z)).

Freezes: C(2,beta) values, N=16 multiplier spot values, the N=128
band-limited total-vs-spectral relative error, and the part2 slope
window study at N=4096 with the spectral band estimator.
"""

import mpmath as mp
import numpy as np

mp.mp.dps = 30
TWO_PI = 2 * np.pi


def c2beta(beta):
    b = mp.mpf(beta)
    return 4 ** (b / 2) * mp.gamma(1 + b / 2) / (mp.pi * abs(mp.gamma(-b / 2)))


print("## C(2,beta) constants")
for beta in (0.3, 0.5, 0.7, 1.0, 1.2):
    c = c2beta(beta)
    print("C(2,%.1f) = %.17g" % (beta, float(c)))
print("beta=1 analytic check: 1/(2pi) = %.17g" % (1 / (2 * np.pi)))


def wrapped_coords(N, L):
    h = L / N
    idx = np.arange(N)
    idx = np.where(idx >= N // 2, idx - N, idx)
    return idx * h, h


def multipliers(N, L, beta, R, kvecs):
    """m1(k), m2(k) at the given k vectors by direct lattice sums."""
    z1, h = wrapped_coords(N, L)
    Z1, Z2 = np.meshgrid(z1, z1, indexing="ij")
    rr = np.hypot(Z1, Z2)
    C = float(c2beta(beta))
    w = np.zeros_like(rr)
    nz = rr > 0
    w[nz] = C * h * h * rr[nz] ** (-2.0 - beta)
    in1 = nz & (rr <= R)
    in2 = rr > R
    out = []
    for k in kvecs:
        ph = 1.0 - np.cos(k[0] * Z1 + k[1] * Z2)
        out.append((np.sum(w[in1] * ph[in1]), np.sum(w[in2] * ph[in2])))
    return out, np.sum(w[in1]), np.sum(w[in2])


print("\n## N=16 L=2pi beta=1.0 R=1.0 multiplier freeze")
ks = [np.array([1.0, 0.0]), np.array([2.0, 3.0]), np.array([5.0, 5.0])]
vals, S1, S2 = multipliers(16, TWO_PI, 1.0, 1.0, ks)
print("S1 = %.17g" % S1)
print("S2 = %.17g" % S2)
for k, (m1, m2) in zip(ks, vals):
    print("k=(%g,%g): m1=%.17g m2=%.17g total=%.17g  |k|^beta=%.17g"
          % (k[0], k[1], m1, m2, m1 + m2, np.hypot(*k) ** 1.0))

print("\n## band-limited total vs spectral at N=128, beta=1.0")
N, L, beta = 128, TWO_PI, 1.0
z1, h = wrapped_coords(N, L)
Z1, Z2 = np.meshgrid(z1, z1, indexing="ij")
rr = np.hypot(Z1, Z2)
C = float(c2beta(beta))
w = np.zeros_like(rr)
w[rr > 0] = C * h * h * rr[rr > 0] ** (-2.0 - beta)
# multiplier on the |n_i|<=10 band via FFT of the kernel
What = np.fft.fft2(w).real  # sum_z w(z) cos(k.z) on the FFT mode grid
S = w.sum()
errs = []
for n1 in range(-10, 11):
    for n2 in range(-10, 11):
        if n1 == 0 and n2 == 0:
            continue
        m = S - What[n1 % N, n2 % N]
        exact = np.hypot(n1, n2) ** beta
        errs.append((m - exact) / exact)
errs = np.array(errs)
print("band |n|<=10: max rel err=%.4g rms=%.4g mean=%.4g"
      % (np.abs(errs).max(), np.sqrt((errs ** 2).mean()), errs.mean()))
fit = 1.0 + errs.mean()
print("fitted constant ratio (calibration) = %.8f" % fit)

print("\n## part2 slope study at N=4096 (spectral band estimator)")
N, L = 4096, TWO_PI
z1, h = wrapped_coords(N, L)
i1 = np.arange(N)
i1 = np.where(i1 >= N // 2, i1 - N, i1)
# radial histogram over integer squared radii: r^2 = (i^2+j^2) h^2
r2int = (i1[:, None].astype(np.int64) ** 2 + i1[None, :].astype(np.int64) ** 2).ravel()
cnt = np.bincount(r2int)
r2u = np.nonzero(cnt)[0][1:]  # drop r=0
rads = np.sqrt(r2u.astype(float)) * h
weights = cnt[r2u].astype(float)
print("h = %.6g, distinct radii = %d" % (h, len(r2u)))
for beta in (0.3, 0.7, 1.2):
    C = float(c2beta(beta))
    kern = C * h * h * rads ** (-2.0 - beta)
    wk = kern * weights
    for (a, b) in ((6 * h, 60 * h), (8 * h, 80 * h), (0.01, 0.1)):
        Rs = np.geomspace(a, b, 8)
        S2s = np.array([wk[rads > R].sum() for R in Rs])
        sl = np.polyfit(np.log(Rs), np.log(S2s), 1)[0]
        print("beta=%.1f window=[%.5f,%.5f] S2-slope=%.4f (target %.1f)"
              % (beta, a, b, sl, -beta))
