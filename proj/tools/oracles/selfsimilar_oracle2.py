"""Independent oracle for the self-similar scenario module.

Profile: Omega(r) = A [ phi(r/R1) - c phi(r/R2) ],  phi(u) = exp(-1/(1-u^2)),
R1 = 0.5, R2 = 1.0, A = 1;  c = (R1/R2)^2 = 1/4 makes the mean exactly zero
(continuum).  Scaled field omega_t = t^{-1} Omega(t^{-1/alpha} x).

Norms: continuum radial quadrature; H = Lambda^beta Omega cross-checked via a
Hankel transform (Plancherel in the radial frequency variable).
Predicates on t in (0,1]:
  omega in L2 Lp      iff alpha < 4/p
  omega in L2 H^{b/2} iff alpha + beta < 2
  f     in L1 Lp      iff alpha < 2/p  (alpha p = 2 -> log divergence)
Numeric classifier: geometric shells t_j = lambda^{-j}, shell masses by
Gauss-Legendre, asymptotic shell ratio rho -> lambda^{-(e+1)};
conv if rho < 0.95, log if 0.95 <= rho <= 1.05, power-divergent above.
"""

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.special import j0

R1, R2, CC = 1.2, 2.4, 0.25
SHARP = 3.0
REPR = "%.17g"


def phi(u):
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    m = np.abs(u) < 1
    out[m] = np.exp(-SHARP / (1.0 - u[m] ** 2))
    return out


def dphi(u):
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    m = np.abs(u) < 1
    out[m] = np.exp(-SHARP / (1.0 - u[m] ** 2)) * (-2 * SHARP * u[m] / (1 - u[m] ** 2) ** 2)
    return out


def omega(r):
    return phi(r / R1) - CC * phi(r / R2)


def domega(r):
    return dphi(r / R1) / R1 - CC * dphi(r / R2) / R2


def lp_radial(fun, p, rmax=2.4):
    val, _ = quad(lambda r: np.abs(fun(r)) ** p * r, 0.0, rmax, limit=400)
    return (2 * np.pi * val) ** (1.0 / p)


print("## continuum profile norms (A=1)")
mean_int, _ = quad(lambda r: omega(r) * r, 0, 2.4, limit=400)
print("mean integral (should be 0): %.3e" % mean_int)
for p in (1, 2, 3, 4):
    print(("||Omega||_%d = " + REPR) % (p, lp_radial(omega, p)))

print("\n## G = Omega + (1/alpha) r Omega' norms")
for alpha in (0.3, 0.9, 1.5):
    G = lambda r, a=alpha: omega(r) + (1.0 / a) * r * domega(r)
    print(("alpha=%g: ||G||_2 = " + REPR + "  ||G||_4 = " + REPR)
          % (alpha, lp_radial(G, 2), lp_radial(G, 4)))

print("\n## Hankel transform of Omega and H = Lambda^beta Omega")
kk = np.concatenate([np.linspace(0, 30, 2401)[1:],
                     np.linspace(30, 200, 1800)[1:]])
ohat = np.array([2 * np.pi * quad(lambda r: omega(r) * j0(k * r) * r,
                                  0, 2.4, limit=200)[0] for k in kk])
spl = CubicSpline(kk, ohat)
print("Omega_hat(5) = %.12g, decay at k=150: %.3e" % (spl(5.0), abs(spl(150.0))))
for beta in (0.45, 0.6):
    # Plancherel: ||Lambda^b Omega||_2^2 = (1/2pi) int k^{2b} |ohat|^2 k dk
    v = np.trapz(kk ** (2 * beta + 1) * ohat ** 2, kk) / (2 * np.pi)
    v2 = np.trapz(kk[kk < 120] ** (2 * beta + 1) * ohat[kk < 120] ** 2,
                  kk[kk < 120]) / (2 * np.pi)
    print(("beta=%g: ||H||_2 = " + REPR + "  (k<120 trunc: %.12g)")
          % (beta, np.sqrt(v), np.sqrt(v2)))
    vg = np.trapz(kk ** (beta + 1) * ohat ** 2, kk) / (2 * np.pi)
    print(("  ||Omega||_{H^{b/2}}: Hdot-seminorm = " + REPR) % np.sqrt(vg))

print("\n## 2D grid cross-check at N=256, L=2pi (production config)")
N, L = 256, 2 * np.pi
h = L / N
x = np.arange(N) * h - L / 2
X, Y = np.meshgrid(x, x, indexing="ij")
rr = np.hypot(X, Y)
w1g, w2g = phi(rr / R1), phi(rr / R2)
c_grid = w1g.sum() / w2g.sum()
print(("c_grid = " + REPR + "  (continuum 0.25, diff %.2e)")
      % (c_grid, abs(c_grid - 0.25)))
og = w1g - CC * w2g  # continuum constant for norm comparisons
for p in (2, 3, 4):
    gq = (h * h * (np.abs(og) ** p).sum()) ** (1.0 / p)
    cq = lp_radial(omega, p)
    print("p=%d grid=%.15g quad=%.15g rel diff=%.2e" % (p, gq, cq, abs(gq - cq) / cq))

k1 = np.fft.fftfreq(N, d=1.0 / N)
KX, KY = np.meshgrid(k1, k1, indexing="ij")
K2 = KX ** 2 + KY ** 2
KA = np.sqrt(K2)
for beta in (0.45, 0.6):
    Hg = np.fft.ifft2(np.fft.fft2(og) * KA ** beta).real
    gq = np.sqrt(h * h * (Hg ** 2).sum())
    v = np.trapz(kk ** (2 * beta + 1) * ohat ** 2, kk) / (2 * np.pi)
    print("beta=%g: grid ||H||_2=%.12g hankel=%.12g rel diff=%.2e"
          % (beta, gq, np.sqrt(v), abs(gq - np.sqrt(v)) / np.sqrt(v)))

print("\n## transport residual at N=256 (radial uses grid-exact c)")
for label, field in (("radial", w1g - c_grid * w2g),
                     ("elliptical", phi(np.hypot(X / 1.3, 1.3 * Y) / R1)
                      - c_grid * phi(np.hypot(X / 1.3, 1.3 * Y) / R2))):
    fh = np.fft.fft2(field)
    inv = np.where(K2 > 0, 1.0 / np.where(K2 > 0, K2, 1.0), 0.0)
    u1 = np.fft.ifft2(1j * KY * inv * fh).real   # u = (-dy, dx) psi, psi=-Lap^-1 w
    u2 = np.fft.ifft2(-1j * KX * inv * fh).real
    g1 = np.fft.ifft2(1j * KX * fh).real
    g2 = np.fft.ifft2(1j * KY * fh).real
    adv = u1 * g1 + u2 * g2
    nu = np.sqrt(h * h * ((u1 ** 2 + u2 ** 2).sum()))
    ng = np.sqrt(h * h * ((g1 ** 2 + g2 ** 2).sum()))
    na = np.sqrt(h * h * ((adv ** 2).sum()))
    print("%s: rel residual = %.3e  (|u|=%.4g |grad w|=%.4g)"
          % (label, na / (nu * ng), nu, ng))

print("\n## curl check: curl u = omega?")
curl = np.fft.ifft2(1j * KX * np.fft.fft2(u2) - 1j * KY * np.fft.fft2(u1)).real
print("max |curl u - omega| = %.3e" % np.abs(curl - field).max())

print("\n## H radial profile for the shell test (N=2048, L=4pi)")
N4, L4 = 2048, 4 * np.pi
h4 = L4 / N4
x4 = np.arange(N4) * h4 - L4 / 2
X4, Y4 = np.meshgrid(x4, x4, indexing="ij")
og4 = omega(np.hypot(X4, Y4))
k14 = np.fft.fftfreq(N4, d=1.0 / N4) * (2 * np.pi / L4)
KX4, KY4 = np.meshgrid(k14, k14, indexing="ij")
KA4 = np.hypot(KX4, KY4)
Hprof = {}
for beta in sorted(set(np.round(a * r, 10) for a in (0.3, 0.5, 0.9, 1.2, 1.5)
                       for r in (0.2, 0.4, 0.6, 0.8, 0.9))):
    Hg4 = np.fft.ifft2(np.fft.fft2(og4) * KA4 ** beta).real
    idx = N4 // 2
    Hprof[beta] = CubicSpline(x4[idx:] , Hg4[idx:, idx])
print("profiles built: %d betas; H(0.6; r=0)=%.6g H(0.6; r=2)=%.6g"
      % (len(Hprof), Hprof[0.6](0.0), Hprof[0.6](2.0)))

print("\n## predicate grid: closed form vs shell classifier")
GLX, GLW = np.polynomial.legendre.leggauss(16)


def shell_ratio(exponent_fun):
    lam, J = 4.0, 14
    masses = []
    for j in range(J):
        a, b = np.log(lam ** -(j + 1.0)), np.log(lam ** -float(j))
        t = np.exp(0.5 * (b - a) * GLX + 0.5 * (a + b))
        w = 0.5 * (b - a) * GLW * t
        masses.append(np.sum(w * exponent_fun(t)))
    return masses[-1] / masses[-2]


def classify(rho):
    return "conv" if rho < 0.95 else ("log" if rho <= 1.05 else "div")


rgrid = np.concatenate([np.linspace(0, 3.0, 3001)[1:], np.geomspace(3.0, 6.0, 200)])
agree, table = True, []
for alpha in (0.3, 0.5, 0.9, 1.2, 1.5):
    for ratio in (0.2, 0.4, 0.6, 0.8, 0.9):
        beta = round(alpha * ratio, 10)
        Gv = omega(rgrid) + (1.0 / alpha) * rgrid * domega(rgrid)
        Hv = Hprof[beta](np.minimum(rgrid, 6.0))
        nOm = {p: lp_radial(omega, p) for p in (2, 3, 4)}
        nHdot = np.sqrt(np.trapz(kk ** (beta + 1) * ohat ** 2, kk) / (2 * np.pi))
        for p in (2, 3, 4):
            # omega in L2 Lp
            e = -1 + 2.0 / (alpha * p)
            cf = "conv" if alpha < 4.0 / p else ("log" if alpha == 4.0 / p else "div")
            nu_ = classify(shell_ratio(lambda t: (t ** e * nOm[p]) ** 2))
            ok1 = cf == nu_
            # omega in L2 Hdot^{beta/2}
            e2 = -1 + (2 - beta) / (2 * alpha)
            cf2 = ("conv" if alpha + beta < 2 else
                   ("log" if alpha + beta == 2 else "div"))
            nu2 = classify(shell_ratio(lambda t: (t ** e2 * nHdot) ** 2))
            ok2 = cf2 == nu2
            # f in L1 Lp, with the s-mixed profile norm
            eG = -2 + 2.0 / (alpha * p)
            cf3 = ("conv" if alpha < 2.0 / p else
                   ("log" if alpha == 2.0 / p else "div"))

            def fmass(t, eG=eG, a=alpha, b=beta, p=p, Gv=Gv, Hv=Hv):
                out = np.empty_like(t)
                for i, ti in enumerate(t):
                    s = ti ** (1 - b / a)
                    prof = -Gv + s * Hv
                    out[i] = (2 * np.pi * np.trapz(np.abs(prof) ** p * rgrid,
                                                   rgrid)) ** (1.0 / p)
                return t ** eG * out

            nu3 = classify(shell_ratio(fmass))
            ok3 = cf3 == nu3
            if not (ok1 and ok2 and ok3):
                agree = False
                print("MISMATCH a=%g r=%g p=%d: w(%s/%s) e(%s/%s) f(%s/%s)"
                      % (alpha, ratio, p, cf, nu_, cf2, nu2, cf3, nu3))
            table.append((alpha, ratio, p, cf, cf2, cf3))
print("all 75x3 classifications agree: %s" % agree)
print("boundary row alpha=0.5 p=4 (any r): closed-form f-label = log")
counts = {}
for row in table:
    counts[(row[3], row[4], row[5])] = counts.get((row[3], row[4], row[5]), 0) + 1
for key in sorted(counts):
    print("  (omega, energy, f) = %s : %d rows" % (str(key), counts[key]))
