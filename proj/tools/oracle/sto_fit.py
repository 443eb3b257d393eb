"""Least-squares STO-NG expansions of Slater orbitals.

Fits N-Gaussian expansions of normalized Slater radial functions by
maximizing the overlap <STO|CGF>, the classic STO-NG construction.
1s shells are fit alone; 2s/2p shells are fit jointly with shared
exponents (sp shell), minimizing the summed squared residual of both
channels.  All fits are done at zeta = 1; molecular shells are obtained
by scaling exponents with zeta**2.

Run as a script to regenerate basis_fit.json and print a comparison
against the canonical STO-3G hydrogen/lithium parameters as a check of
the fitting machinery.
"""

import json
import math
import sys

import numpy as np
from scipy import optimize

# Radial overlap integrals, all analytic.
#
# Normalized primitives (radial part, including the r^l factor):
#   s-GTO:  (2a/pi)^(3/4) * exp(-a r^2)
#   p-GTO:  (128 a^5 / pi^3)^(1/4) * r * exp(-a r^2)
# Normalized Slater radial functions:
#   1s STO: 2 * exp(-r)            (zeta = 1)
#   2s/2p STO: (4/3)^(1/2) * r * exp(-r)
#
# <f|g> = integral f(r) g(r) r^2 dr over [0, inf).


def _overlap_sto_gto(n_sto, l, alpha):
    """<STO_n | GTO(alpha)> radial overlap for normalized functions.

    n_sto: 1 for 1s (r^0 e^-r), 2 for 2s/2p (r^1 e^-r).
    l: 0 for s-GTO, 1 for p-GTO.
    """
    # power of r in the full integrand: (n_sto-1) + l + 2
    k = (n_sto - 1) + l + 2
    # integral_0^inf r^k exp(-alpha r^2 - r) dr  via scipy quadrature-free
    # closed form using the parabolic cylinder function is overkill;
    # adaptive quadrature is exact to machine precision here.
    from scipy.integrate import quad

    val, err = quad(lambda r: r**k * math.exp(-alpha * r * r - r), 0.0, 60.0,
                    limit=200, epsabs=1e-14, epsrel=1e-13)
    if n_sto == 1:
        n_s = 2.0
    else:
        n_s = math.sqrt(4.0 / 3.0)
    if l == 0:
        # sqrt(4 pi) converts the 3D-normalized GTO constant to the
        # radial convention (Y00 split off) used for the STO side.
        n_g = math.sqrt(4.0 * math.pi) * (2.0 * alpha / math.pi) ** 0.75
    else:
        n_g = math.sqrt(4.0 * math.pi / 3.0) * (128.0 * alpha**5 / math.pi**3) ** 0.25
    return n_s * n_g * val


def _overlap_gto_gto(l, a, b):
    """<GTO(a)|GTO(b)> radial overlap for normalized primitives."""
    if l == 0:
        return (2.0 * math.sqrt(a * b) / (a + b)) ** 1.5
    return (2.0 * math.sqrt(a * b) / (a + b)) ** 2.5


def _channel_quality(exps, n_sto, l):
    """Max overlap^2 achievable for one channel at fixed exponents,
    plus the optimizing (normalized-primitive) coefficients."""
    n = len(exps)
    v = np.array([_overlap_sto_gto(n_sto, l, a) for a in exps])
    s = np.array([[_overlap_gto_gto(l, a, b) for b in exps] for a in exps])
    c = np.linalg.solve(s, v)
    q = float(v @ c)  # = v^T S^-1 v = <STO|P_span STO>
    c = c / math.sqrt(c @ s @ c)
    if v @ c < 0:
        c = -c
    return q, c


def fit_1s(n, seed=0):
    """Fit an n-Gaussian expansion of the zeta=1 Slater 1s."""
    rng = np.random.default_rng(seed)
    best = None
    for trial in range(8):
        ratio = 2.0 + 2.0 * rng.random()
        x0 = np.log(ratio ** np.arange(n) * 0.05 * ratio)

        def neg_quality(x):
            exps = np.exp(x)
            q, _ = _channel_quality(exps, 1, 0)
            return -q

        res = optimize.minimize(neg_quality, x0, method="Nelder-Mead",
                                options={"xatol": 1e-12, "fatol": 1e-14,
                                         "maxiter": 20000, "maxfev": 20000})
        if best is None or res.fun < best.fun:
            best = res
    exps = np.exp(best.x)
    order = np.argsort(-exps)
    exps = exps[order]
    q, c = _channel_quality(exps, 1, 0)
    return exps, c, q


def fit_sp(n, seed=0):
    """Joint 2s/2p fit with shared exponents (sp shell), zeta=1."""
    rng = np.random.default_rng(seed)
    best = None
    for trial in range(8):
        ratio = 2.0 + 2.0 * rng.random()
        x0 = np.log(ratio ** np.arange(n) * 0.02 * ratio)

        def neg_quality(x):
            exps = np.exp(x)
            qs, _ = _channel_quality(exps, 2, 0)
            qp, _ = _channel_quality(exps, 2, 1)
            return -(qs + qp)

        res = optimize.minimize(neg_quality, x0, method="Nelder-Mead",
                                options={"xatol": 1e-12, "fatol": 1e-14,
                                         "maxiter": 40000, "maxfev": 40000})
        if best is None or res.fun < best.fun:
            best = res
    exps = np.exp(best.x)
    order = np.argsort(-exps)
    exps = exps[order]
    qs, cs = _channel_quality(exps, 2, 0)
    qp, cp = _channel_quality(exps, 2, 1)
    return exps, cs, cp, qs, qp


CANONICAL_STO3G_H = {
    # zeta = 1.24, canonical published values
    "exps": [3.42525091, 0.62391373, 0.16885540],
    "coefs": [0.15432897, 0.53532814, 0.44463454],
}

CANONICAL_STO3G_LI_SP = {
    # zeta = 0.80, canonical published values
    "exps": [0.6362897469, 0.1478600533, 0.0480886784],
    "coefs_s": [-0.09996723, 0.39951283, 0.70011547],
    "coefs_p": [0.15591627, 0.60768372, 0.39195739],
}


def main():
    out = {}
    for n in (3, 6):
        e1, c1, q1 = fit_1s(n)
        e2, cs, cp, qs, qp = fit_sp(n)
        out[f"sto{n}g"] = {
            "s1": {"exps": list(e1), "coefs": list(c1), "overlap": q1},
            "sp2": {"exps": list(e2), "coefs_s": list(cs),
                    "coefs_p": list(cp), "overlap_s": qs, "overlap_p": qp},
        }
        print(f"STO-{n}G  1s overlap  = {q1:.8f}")
        print(f"STO-{n}G  2s overlap  = {qs:.8f}")
        print(f"STO-{n}G  2p overlap  = {qp:.8f}")

    # Cross-check the machinery against canonical STO-3G values.
    z = 1.24
    fit = out["sto3g"]["s1"]
    scaled = [a * z * z for a in fit["exps"]]
    print("\nH 1s zeta=1.24 scaled fit vs canonical STO-3G:")
    for a, b in zip(scaled, CANONICAL_STO3G_H["exps"]):
        print(f"  exp {a:.7f}  vs  {b:.7f}   rel {abs(a - b) / b:.2e}")
    for a, b in zip(fit["coefs"], CANONICAL_STO3G_H["coefs"]):
        print(f"  coef {a:.7f} vs  {b:.7f}   rel {abs(abs(a) - abs(b)) / abs(b):.2e}")

    z = 0.80
    fit = out["sto3g"]["sp2"]
    scaled = [a * z * z for a in fit["exps"]]
    print("\nLi sp zeta=0.80 scaled fit vs canonical STO-3G:")
    for a, b in zip(scaled, CANONICAL_STO3G_LI_SP["exps"]):
        print(f"  exp {a:.7f}  vs  {b:.7f}   rel {abs(a - b) / b:.2e}")
    for a, b in zip(fit["coefs_s"], CANONICAL_STO3G_LI_SP["coefs_s"]):
        print(f"  cs  {a:+.7f} vs {b:+.7f}   rel {abs(abs(a) - abs(b)) / abs(b):.2e}")
    for a, b in zip(fit["coefs_p"], CANONICAL_STO3G_LI_SP["coefs_p"]):
        print(f"  cp  {a:+.7f} vs {b:+.7f}   rel {abs(abs(a) - abs(b)) / abs(b):.2e}")

    path = sys.argv[1] if len(sys.argv) > 1 else "basis_fit.json"
    with open(path, "w") as f:
        json.dump(out, f, indent=1)
    print(f"\nwrote {path}")


if __name__ == "__main__":
    main()
