"""RHF, determinant FCI, natural orbitals, and active-space reduction.

Everything is dense numpy; system sizes here are at most 6 spatial
orbitals.  Spin-orbital convention: spin-orbital index = 2*orbital + spin
with spin 0 = down (even indices) and spin 1 = up (odd indices).
"""

import itertools
import json
import math
import os

import numpy as np

import mdint

ANGSTROM_TO_BOHR = 1.0 / 0.52917721067


def load_basis_fit(path=None):
    if path is None:
        path = os.path.join(os.path.dirname(__file__), "basis_fit.json")
    with open(path) as f:
        return json.load(f)


def h2_shells(r_bohr, basis_fit):
    """H2 on the z axis, STO-3G, zeta = 1.24."""
    fit = basis_fit["sto3g"]["s1"]
    z2 = 1.24 ** 2
    exps = [a * z2 for a in fit["exps"]]
    coefs = list(fit["coefs"])
    pos_a = np.array([0.0, 0.0, 0.0])
    pos_b = np.array([0.0, 0.0, r_bohr])
    shells = [mdint.Shell(pos_a, 0, exps, coefs),
              mdint.Shell(pos_b, 0, exps, coefs)]
    charges = [1.0, 1.0]
    centers = [pos_a, pos_b]
    return shells, charges, centers


def lih_shells(r_bohr, basis_fit):
    """LiH on the z axis (Li at origin), STO-6G.

    Li: 1s zeta=2.69, 2sp shared-exponent shell zeta=0.80.
    H: 1s zeta=1.24.
    """
    s1 = basis_fit["sto6g"]["s1"]
    sp = basis_fit["sto6g"]["sp2"]
    li = np.array([0.0, 0.0, 0.0])
    h = np.array([0.0, 0.0, r_bohr])
    z1 = 2.69 ** 2
    z2 = 0.80 ** 2
    zh = 1.24 ** 2
    shells = [
        mdint.Shell(li, 0, [a * z1 for a in s1["exps"]], list(s1["coefs"])),
        mdint.Shell(li, 0, [a * z2 for a in sp["exps"]], list(sp["coefs_s"])),
        mdint.Shell(li, 1, [a * z2 for a in sp["exps"]], list(sp["coefs_p"])),
        mdint.Shell(h, 0, [a * zh for a in s1["exps"]], list(s1["coefs"])),
    ]
    charges = [3.0, 1.0]
    centers = [li, h]
    return shells, charges, centers


def nuclear_repulsion(charges, centers):
    e = 0.0
    for i in range(len(charges)):
        for j in range(i):
            e += charges[i] * charges[j] / np.linalg.norm(
                np.asarray(centers[i]) - np.asarray(centers[j]))
    return e


def rhf(s, t, v, eri, n_elec, max_iter=200, conv=1e-12):
    """Closed-shell RHF with DIIS.  Returns (E_elec, C, eps)."""
    n = s.shape[0]
    n_occ = n_elec // 2
    hcore = t + v
    sval, svec = np.linalg.eigh(s)
    x = svec @ np.diag(sval ** -0.5) @ svec.T

    def fock(dm):
        j = np.einsum("ijkl,kl->ij", eri, dm)
        k = np.einsum("ikjl,kl->ij", eri, dm)
        return hcore + j - 0.5 * k

    # core guess
    f = hcore
    dm = None
    energy = 0.0
    err_list, f_list = [], []
    for it in range(max_iter):
        fp = x.T @ f @ x
        eps, cp = np.linalg.eigh(fp)
        c = x @ cp
        cocc = c[:, :n_occ]
        dm_new = 2.0 * cocc @ cocc.T
        f_new = fock(dm_new)
        e_new = 0.5 * np.einsum("ij,ij->", dm_new, hcore + f_new)
        # DIIS on the commutator residual
        err = f_new @ dm_new @ s - s @ dm_new @ f_new
        err_list.append(err)
        f_list.append(f_new)
        if len(err_list) > 8:
            err_list.pop(0)
            f_list.pop(0)
        if dm is not None and abs(e_new - energy) < conv and \
                np.max(np.abs(dm_new - dm)) < 1e-10:
            return e_new, c, eps
        dm, energy = dm_new, e_new
        m = len(err_list)
        if m >= 2:
            bmat = -np.ones((m + 1, m + 1))
            bmat[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    bmat[i, j] = np.einsum("ij,ij->", err_list[i], err_list[j])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(bmat, rhs)[:m]
                f = sum(wi * fi for wi, fi in zip(w, f_list))
            except np.linalg.LinAlgError:
                f = f_new
        else:
            f = f_new
    raise RuntimeError("SCF failed to converge")


def mo_transform(c, hcore, eri):
    """AO -> MO transform; returns (h_mo, eri_mo) chemist (pq|rs)."""
    h_mo = c.T @ hcore @ c
    tmp = np.einsum("pi,pqrs->iqrs", c, eri)
    tmp = np.einsum("qj,iqrs->ijrs", c, tmp)
    tmp = np.einsum("rk,ijrs->ijks", c, tmp)
    eri_mo = np.einsum("sl,ijks->ijkl", c, tmp)
    return h_mo, eri_mo


# ---------------------------------------------------------------------------
# Determinant FCI over spin orbitals.
# A determinant is a bitmask over spin orbitals; orbital occupation order for
# signs is ascending mode index (mode 0 is the rightmost/first-applied
# creation operator).


def spinorb_integrals(h_mo, eri_mo):
    """Spatial -> spin-orbital integrals.

    Returns (h1, h2) where h2[p,q,r,s] = <pq|rs> (physicist) over
    spin orbitals, p = 2*P + sigma.
    """
    n = h_mo.shape[0]
    m = 2 * n
    h1 = np.zeros((m, m))
    for p in range(m):
        for q in range(m):
            if p % 2 == q % 2:
                h1[p, q] = h_mo[p // 2, q // 2]
    h2 = np.zeros((m, m, m, m))
    for p in range(m):
        for q in range(m):
            for r in range(m):
                for s in range(m):
                    if p % 2 == r % 2 and q % 2 == s % 2:
                        h2[p, q, r, s] = eri_mo[p // 2, r // 2, q // 2, s // 2]
    return h1, h2


def determinants(n_modes, n_elec, sz2=None):
    """All determinants (bitmasks) with n_elec electrons, optionally
    restricted to 2*Sz = sz2 (up minus down count)."""
    dets = []
    for occ in itertools.combinations(range(n_modes), n_elec):
        if sz2 is not None:
            up = sum(1 for m in occ if m % 2 == 1)
            down = n_elec - up
            if up - down != sz2:
                continue
        mask = 0
        for m in occ:
            mask |= 1 << m
        dets.append(mask)
    dets.sort()
    return dets


def _apply_annihilate(mask, mode):
    if not (mask >> mode) & 1:
        return None, 0
    sign = (-1) ** bin(mask & ((1 << mode) - 1)).count("1")
    return mask & ~(1 << mode), sign


def _apply_create(mask, mode):
    if (mask >> mode) & 1:
        return None, 0
    sign = (-1) ** bin(mask & ((1 << mode) - 1)).count("1")
    return mask | (1 << mode), sign


def apply_ladder(mask, ladder):
    """Apply a ladder string [(mode, dagger), ...] rightmost first.

    Returns (new_mask, sign) or (None, 0)."""
    sign = 1
    for mode, dagger in reversed(ladder):
        if dagger:
            mask, s = _apply_create(mask, mode)
        else:
            mask, s = _apply_annihilate(mask, mode)
        if mask is None:
            return None, 0
        sign *= s
    return mask, sign


def build_hamiltonian(h1, h2, dets):
    """Dense H over the determinant list. H = sum h1[pq] p^ q +
    1/2 sum h2[pqrs] p^ q^ s r.

    Enumerates annihilation pairs from each determinant's occupied set
    rather than looping all (p,q,r,s)."""
    m = h1.shape[0]
    index = {d: i for i, d in enumerate(dets)}
    n = len(dets)
    ham = np.zeros((n, n))

    def par(mask, mode):
        return -1 if (mask & ((1 << mode) - 1)).bit_count() & 1 else 1

    for ci, det in enumerate(dets):
        occ = [k for k in range(m) if (det >> k) & 1]
        for q in occ:
            s1 = par(det, q)
            m1 = det & ~(1 << q)
            for p in range(m):
                if (m1 >> p) & 1 or abs(h1[p, q]) < 1e-14:
                    continue
                ham[index[m1 | (1 << p)], ci] += s1 * par(m1, p) * h1[p, q]
        for r in occ:
            sr = par(det, r)
            mr = det & ~(1 << r)
            for s in occ:
                if s == r:
                    continue
                ss = sr * par(mr, s)
                ms = mr & ~(1 << s)
                for q in range(m):
                    if (ms >> q) & 1:
                        continue
                    sq = ss * par(ms, q)
                    mq = ms | (1 << q)
                    row = h2[:, q, r, s]
                    for p in range(m):
                        if p == q or (ms >> p) & 1 or abs(row[p]) < 1e-14:
                            continue
                        new = mq | (1 << p)
                        if new in index:
                            ham[index[new], ci] += \
                                0.5 * sq * par(mq, p) * row[p]
    return ham


def fci_ground(h1, h2, n_modes, n_elec, sz2=0):
    dets = determinants(n_modes, n_elec, sz2)
    ham = build_hamiltonian(h1, h2, dets)
    w, vec = np.linalg.eigh(ham)
    return w[0], vec[:, 0], dets


def one_rdm_spatial(vec, dets, n_modes):
    """Spin-summed 1-RDM D[P,Q] = sum_sigma <a^_{P sigma} a_{Q sigma}>."""
    n_orb = n_modes // 2
    index = {d: i for i, d in enumerate(dets)}
    dm = np.zeros((n_orb, n_orb))
    for pp in range(n_orb):
        for qq in range(n_orb):
            val = 0.0
            for sigma in (0, 1):
                p = 2 * pp + sigma
                q = 2 * qq + sigma
                for ci, det in enumerate(dets):
                    if abs(vec[ci]) < 1e-14:
                        continue
                    new, sign = apply_ladder(det, [(p, True), (q, False)])
                    if new is not None and new in index:
                        val += vec[index[new]] * sign * vec[ci]
            dm[pp, qq] = val
    return dm


def natural_orbitals(dm, c_mo):
    """Diagonalize the spatial 1-RDM (MO basis); returns
    (noons, c_nmo) with NOONs descending and deterministic phases."""
    w, u = np.linalg.eigh(dm)
    order = np.argsort(-w)
    w = w[order]
    u = u[:, order]
    c_nmo = c_mo @ u
    # deterministic phase: largest-magnitude AO coefficient positive
    for k in range(c_nmo.shape[1]):
        col = c_nmo[:, k]
        idx = int(np.argmax(np.abs(col)))
        if col[idx] < 0:
            c_nmo[:, k] = -col
    return w, c_nmo


def frozen_core_fold(h_mo, eri_mo, core, active):
    """Fold frozen doubly-occupied orbitals into an active-space
    Hamiltonian.  Returns (e_core, h_act, eri_act) with chemist eri."""
    e_core = 0.0
    for c in core:
        e_core += 2.0 * h_mo[c, c]
        for c2 in core:
            e_core += 2.0 * eri_mo[c, c, c2, c2] - eri_mo[c, c2, c2, c]
    na = len(active)
    h_act = np.zeros((na, na))
    for i, p in enumerate(active):
        for j, q in enumerate(active):
            val = h_mo[p, q]
            for c in core:
                val += 2.0 * eri_mo[p, q, c, c] - eri_mo[p, c, c, q]
            h_act[i, j] = val
    eri_act = np.zeros((na, na, na, na))
    for i, p in enumerate(active):
        for j, q in enumerate(active):
            for k, r in enumerate(active):
                for l, s in enumerate(active):
                    eri_act[i, j, k, l] = eri_mo[p, q, r, s]
    return e_core, h_act, eri_act
