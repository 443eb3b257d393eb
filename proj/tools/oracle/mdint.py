"""McMurchie-Davidson molecular integrals over contracted Cartesian GTOs.

Supports arbitrary angular momentum; used here for s and p shells.
Returns overlap, kinetic, nuclear-attraction and two-electron repulsion
integrals in chemist notation (ab|cd).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammainc, gamma


def boys(m, t):
    """Boys function F_m(t)."""
    if t < 1e-13:
        return 1.0 / (2 * m + 1)
    return gammainc(m + 0.5, t) * gamma(m + 0.5) / (2.0 * t ** (m + 0.5))


def _dfact(n):
    # (2n-1)!! with (-1)!! = 1
    out = 1
    for k in range(2 * n - 1, 0, -2):
        out *= k
    return out


def prim_norm(a, lmn):
    l, m, n = lmn
    la = l + m + n
    return ((2 * a / math.pi) ** 0.75 * (4 * a) ** (la / 2.0)
            / math.sqrt(_dfact(l) * _dfact(m) * _dfact(n)))


@dataclass
class Shell:
    """Contracted shell: one center, one angular momentum, shared exponents."""
    center: np.ndarray
    l: int                      # 0 = s, 1 = p
    exps: list
    coefs: list                 # for normalized primitives

    def basis_functions(self):
        if self.l == 0:
            lmns = [(0, 0, 0)]
        elif self.l == 1:
            lmns = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        else:
            raise ValueError("only s and p shells supported here")
        return [Cgf(self.center, lmn, self.exps, self.coefs) for lmn in lmns]


@dataclass
class Cgf:
    """Contracted Cartesian Gaussian."""
    center: np.ndarray
    lmn: tuple
    exps: list
    coefs: list
    norms: list = field(default_factory=list)

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=float)
        self.norms = [prim_norm(a, self.lmn) for a in self.exps]


def e_coef(i, j, t, qx, a, b):
    """Hermite expansion coefficient E_t^{ij} for one dimension.

    qx = Ax - Bx separation; a, b primitive exponents.
    """
    p = a + b
    mu = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == 0 and j == 0 and t == 0:
        return math.exp(-mu * qx * qx)
    if j == 0:
        return (e_coef(i - 1, j, t - 1, qx, a, b) / (2 * p)
                - (mu * qx / a) * e_coef(i - 1, j, t, qx, a, b)
                + (t + 1) * e_coef(i - 1, j, t + 1, qx, a, b))
    return (e_coef(i, j - 1, t - 1, qx, a, b) / (2 * p)
            + (mu * qx / b) * e_coef(i, j - 1, t, qx, a, b)
            + (t + 1) * e_coef(i, j - 1, t + 1, qx, a, b))


def _overlap_prim(a, lmn1, apos, b, lmn2, bpos):
    p = a + b
    s = 1.0
    for d in range(3):
        s *= e_coef(lmn1[d], lmn2[d], 0, apos[d] - bpos[d], a, b)
    return s * (math.pi / p) ** 1.5


def _kinetic_prim(a, lmn1, apos, b, lmn2, bpos):
    # T = -1/2 Laplacian acting on the ket
    l2, m2, n2 = lmn2

    def ovl(lmnk):
        if min(lmnk) < 0:
            return 0.0
        return _overlap_prim(a, lmn1, apos, b, lmnk, bpos)

    term0 = b * (2 * (l2 + m2 + n2) + 3) * ovl((l2, m2, n2))
    term1 = -2 * b * b * (ovl((l2 + 2, m2, n2)) + ovl((l2, m2 + 2, n2))
                          + ovl((l2, m2, n2 + 2)))
    term2 = -0.5 * (l2 * (l2 - 1) * ovl((l2 - 2, m2, n2))
                    + m2 * (m2 - 1) * ovl((l2, m2 - 2, n2))
                    + n2 * (n2 - 1) * ovl((l2, m2, n2 - 2)))
    return term0 + term1 + term2


def r_table(tmax, umax, vmax, p, pc):
    """Hermite Coulomb table R^0_{tuv} for 0<=t<=tmax etc."""
    nmax = tmax + umax + vmax
    t_arg = p * float(pc @ pc)
    fvals = [boys(n, t_arg) for n in range(nmax + 1)]
    # level[n][t,u,v] holds R^n_{tuv}; build down from n = nmax
    shape = (tmax + 1, umax + 1, vmax + 1)
    levels = [np.zeros(shape) for _ in range(nmax + 1)]
    for n in range(nmax + 1):
        levels[n][0, 0, 0] = (-2.0 * p) ** n * fvals[n]
    for n in range(nmax - 1, -1, -1):
        for t in range(min(tmax, nmax - n) + 1):
            for u in range(min(umax, nmax - n - t) + 1):
                for v in range(min(vmax, nmax - n - t - u) + 1):
                    if t == 0 and u == 0 and v == 0:
                        continue
                    if t > 0:
                        val = pc[0] * levels[n + 1][t - 1, u, v]
                        if t > 1:
                            val += (t - 1) * levels[n + 1][t - 2, u, v]
                    elif u > 0:
                        val = pc[1] * levels[n + 1][t, u - 1, v]
                        if u > 1:
                            val += (u - 1) * levels[n + 1][t, u - 2, v]
                    else:
                        val = pc[2] * levels[n + 1][t, u, v - 1]
                        if v > 1:
                            val += (v - 1) * levels[n + 1][t, u, v - 2]
                    levels[n][t, u, v] = val
    return levels[0]


def r_herm(t, u, v, n, p, pc):
    """Hermite Coulomb auxiliary R^n_{tuv} (table-backed, n=0 entry)."""
    assert n == 0
    return r_table(t, u, v, p, pc)[t, u, v]


def _nuclear_prim(a, lmn1, apos, b, lmn2, bpos, cpos):
    p = a + b
    pp = (a * apos + b * bpos) / p
    pc = pp - cpos
    tmax = lmn1[0] + lmn2[0]
    umax = lmn1[1] + lmn2[1]
    vmax = lmn1[2] + lmn2[2]
    rtab = r_table(tmax, umax, vmax, p, pc)
    val = 0.0
    for t in range(tmax + 1):
        ex = e_coef(lmn1[0], lmn2[0], t, apos[0] - bpos[0], a, b)
        if ex == 0.0:
            continue
        for u in range(umax + 1):
            ey = e_coef(lmn1[1], lmn2[1], u, apos[1] - bpos[1], a, b)
            if ey == 0.0:
                continue
            for v in range(vmax + 1):
                ez = e_coef(lmn1[2], lmn2[2], v, apos[2] - bpos[2], a, b)
                if ez == 0.0:
                    continue
                val += ex * ey * ez * rtab[t, u, v]
    return 2.0 * math.pi / p * val


def _eri_prim(a, lmn1, apos, b, lmn2, bpos, c, lmn3, cpos, d, lmn4, dpos):
    p = a + b
    q = c + d
    eta = p * q / (p + q)
    pp = (a * apos + b * bpos) / p
    qq = (c * cpos + d * dpos) / q
    pq = pp - qq

    def eset(l1, l2, pos1, pos2, e1, e2):
        out = []
        for t in range(l1[0] + l2[0] + 1):
            ex = e_coef(l1[0], l2[0], t, pos1[0] - pos2[0], e1, e2)
            for u in range(l1[1] + l2[1] + 1):
                ey = e_coef(l1[1], l2[1], u, pos1[1] - pos2[1], e1, e2)
                for v in range(l1[2] + l2[2] + 1):
                    ez = e_coef(l1[2], l2[2], v, pos1[2] - pos2[2], e1, e2)
                    w = ex * ey * ez
                    if w != 0.0:
                        out.append((t, u, v, w))
        return out

    bra = eset(lmn1, lmn2, apos, bpos, a, b)
    ket = eset(lmn3, lmn4, cpos, dpos, c, d)
    tmax = lmn1[0] + lmn2[0] + lmn3[0] + lmn4[0]
    umax = lmn1[1] + lmn2[1] + lmn3[1] + lmn4[1]
    vmax = lmn1[2] + lmn2[2] + lmn3[2] + lmn4[2]
    rtab = r_table(tmax, umax, vmax, eta, pq)
    val = 0.0
    for (t, u, v, w1) in bra:
        for (tt, uu, vv, w2) in ket:
            val += w1 * w2 * (-1) ** (tt + uu + vv) * rtab[t + tt, u + uu, v + vv]
    return val * 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))


def _contract2(f, g1, g2, *args):
    val = 0.0
    for a, ca, na in zip(g1.exps, g1.coefs, g1.norms):
        for b, cb, nb in zip(g2.exps, g2.coefs, g2.norms):
            val += ca * cb * na * nb * f(a, g1.lmn, g1.center,
                                         b, g2.lmn, g2.center, *args)
    return val


def overlap(g1, g2):
    return _contract2(_overlap_prim, g1, g2)


def kinetic(g1, g2):
    return _contract2(_kinetic_prim, g1, g2)


def nuclear(g1, g2, cpos):
    return _contract2(_nuclear_prim, g1, g2, np.asarray(cpos, dtype=float))


def eri(g1, g2, g3, g4):
    val = 0.0
    for a, ca, na in zip(g1.exps, g1.coefs, g1.norms):
        for b, cb, nb in zip(g2.exps, g2.coefs, g2.norms):
            for c, cc, nc in zip(g3.exps, g3.coefs, g3.norms):
                for d, cd, nd in zip(g4.exps, g4.coefs, g4.norms):
                    val += (ca * cb * cc * cd * na * nb * nc * nd
                            * _eri_prim(a, g1.lmn, g1.center,
                                        b, g2.lmn, g2.center,
                                        c, g3.lmn, g3.center,
                                        d, g4.lmn, g4.center))
    return val


def build_integrals(shells, charges, centers):
    """Assemble AO matrices for a shell list.

    Returns (S, T, V, ERI, basis) with ERI in chemist notation (ij|kl).
    AOs are renormalized so diag(S) = 1.
    """
    basis = []
    for sh in shells:
        basis.extend(sh.basis_functions())
    n = len(basis)

    # renormalize contractions
    for g in basis:
        s = overlap(g, g)
        scale = 1.0 / math.sqrt(s)
        g.coefs = [c * scale for c in g.coefs]

    s_mat = np.zeros((n, n))
    t_mat = np.zeros((n, n))
    v_mat = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s_mat[i, j] = s_mat[j, i] = overlap(basis[i], basis[j])
            t_mat[i, j] = t_mat[j, i] = kinetic(basis[i], basis[j])
            vv = 0.0
            for z, cpos in zip(charges, centers):
                vv += -z * nuclear(basis[i], basis[j], cpos)
            v_mat[i, j] = v_mat[j, i] = vv

    eri_mat = np.zeros((n, n, n, n))
    done = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    key = _eri_key(i, j, k, l)
                    if key in done:
                        eri_mat[i, j, k, l] = done[key]
                        continue
                    val = eri(basis[i], basis[j], basis[k], basis[l])
                    done[key] = val
                    eri_mat[i, j, k, l] = val
    return s_mat, t_mat, v_mat, eri_mat, basis


def _eri_key(i, j, k, l):
    ij = (i, j) if i >= j else (j, i)
    kl = (k, l) if k >= l else (l, k)
    return (ij, kl) if ij >= kl else (kl, ij)
