"""Shared lattice/model helpers for the oracle scripts.

These scripts independently recompute the constants that are frozen into the
C++ test suite. They use brute-force summation and high-precision arithmetic,
never the C++ code paths.
"""

import numpy as np

TWO_PI = 2.0 * np.pi


def mode_lattice(N, max_mode=None):
    """Integer modes n=(n1,n2), excluding 0 and the Nyquist rows/columns.

    Returns an (M,2) int array. Modes satisfy |n_i| <= N/2 - 1, and optionally
    max(|n1|,|n2|) <= max_mode.
    """
    half = N // 2
    rng = np.arange(-(half - 1), half)  # -(N/2-1) .. N/2-1
    n1, n2 = np.meshgrid(rng, rng, indexing="ij")
    n = np.stack([n1.ravel(), n2.ravel()], axis=1)
    keep = ~np.all(n == 0, axis=1)
    if max_mode is not None:
        keep &= np.max(np.abs(n), axis=1) <= max_mode
    return n[keep]


def g_logeuler(r, gamma):
    return (1.0 + r * r) ** (-1.0) * np.log(np.e + r) ** (-2.0 * gamma)


def g_hyponswns(r, beta):
    return (1.0 + r * r) ** (-1.0 - beta / 2.0)


def g_kraichnan(r, alpha):
    return (1.0 + r) ** (-2.0 - 2.0 * alpha)


def g_flandoli(r):
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    nz = r > 0
    out[nz] = r[nz] ** (-2.0) * np.log(np.e + r[nz]) ** (-2.0)
    return out


def build_q(g, N, L, max_mode=None, cutoff=None):
    """Per-mode variances q(k) = c_norm * g(|k|) * exp(-|k|^2/cutoff)."""
    n = mode_lattice(N, max_mode)
    k = n * (TWO_PI / L)
    kn = np.hypot(k[:, 0], k[:, 1])
    c_norm = (TWO_PI / L) ** 2
    q = c_norm * g(kn)
    if cutoff is not None:
        q = q * np.exp(-(kn ** 2) / cutoff)
    return n, k, q


def kappa_of(q):
    return 0.25 * np.sum(q)
