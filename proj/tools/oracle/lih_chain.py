"""LiH/STO-6G pipeline: RHF -> FCI -> natural orbitals -> 4-orbital
active space (8 modes, core kept explicit) -> BK -> 3-qubit reduction.

Shared by the structural checks and the table generator.
"""

import numpy as np
import scipy.optimize

import chem
import mdint
import qmap

ACTIVE_ORBS = (0, 1, 2, 3)  # NOON-descending natural orbitals
SUPPORT = (2, 4, 6)         # qubits carrying X/Y after the two-double ansatz


def nmo_canonicalize(noons, c_nmo):
    """Character-stable NMO ordering: [s0, s1, s2, px, py, s3] with the
    sigma orbitals NOON-descending.

    Rank-only ordering is unstable: near R = 3.4 the last sigma orbital's
    NOON crosses the degenerate p pair's.  The p columns are symmetry
    isolated (AO order [Li1s, Li2s, px, py, pz, H1s]); the exactly
    degenerate px/py pair is disentangled by diagonalizing the AO-index
    operator within its span.  Phases: largest AO coefficient positive."""
    n = c_nmo.shape[1]
    pi_cols, sigma_cols = [], []
    for k in range(n):
        col = c_nmo[:, k]
        if abs(col[2]) ** 2 + abs(col[3]) ** 2 > 0.5:
            pi_cols.append(k)
        else:
            sigma_cols.append(k)
    assert len(pi_cols) == 2 and len(sigma_cols) == 4, pi_cols
    assert abs(noons[pi_cols[0]] - noons[pi_cols[1]]) < 1e-7
    g = c_nmo[:, pi_cols]
    a_diag = np.arange(c_nmo.shape[0], dtype=float)
    m = g.T @ (a_diag[:, None] * g)
    wA, u = np.linalg.eigh((m + m.T) / 2)
    g = g @ u[:, np.argsort(wA)]
    pi_noons = [noons[pi_cols[0]], noons[pi_cols[1]]]
    order = sigma_cols[:3] + [None, None] + sigma_cols[3:]
    new_c = np.zeros_like(c_nmo)
    new_w = np.zeros_like(noons)
    for dst, src in enumerate(order):
        if src is None:
            new_c[:, dst] = g[:, dst - 3]
            new_w[dst] = pi_noons[dst - 3]
        else:
            new_c[:, dst] = c_nmo[:, src]
            new_w[dst] = noons[src]
    for k in range(n):
        col = new_c[:, k]
        idx = int(np.argmax(np.abs(col)))
        if col[idx] < 0:
            new_c[:, k] = -col
    return new_w, new_c, True


def lih_system(r_angstrom, basis_fit):
    """Full chain at one geometry.  Returns a dict of everything."""
    r_bohr = r_angstrom * chem.ANGSTROM_TO_BOHR
    shells, charges, centers = chem.lih_shells(r_bohr, basis_fit)
    s, t, v, eri, basis = mdint.build_integrals(shells, charges, centers)
    e_nuc = chem.nuclear_repulsion(charges, centers)
    e_elec, c_mo, eps = chem.rhf(s, t, v, eri, 4)
    h_mo, eri_mo = chem.mo_transform(c_mo, t + v, eri)
    h1, h2 = chem.spinorb_integrals(h_mo, eri_mo)
    e_fci, vec, dets = chem.fci_ground(h1, h2, 12, 4, sz2=0)
    dm = chem.one_rdm_spatial(vec, dets, 12)
    w, umat = np.linalg.eigh(dm)
    order = np.argsort(-w)
    w = w[order]
    umat = umat[:, order]
    c_nmo = c_mo @ umat
    w, c_nmo, _ = nmo_canonicalize(w, c_nmo)
    # integrals in the NMO basis
    h_nmo, eri_nmo = chem.mo_transform(c_nmo, t + v, eri)
    na = len(ACTIVE_ORBS)
    h_act = h_nmo[np.ix_(ACTIVE_ORBS, ACTIVE_ORBS)]
    eri_act = eri_nmo[np.ix_(ACTIVE_ORBS, ACTIVE_ORBS,
                             ACTIVE_ORBS, ACTIVE_ORBS)]
    h1a, h2a = chem.spinorb_integrals(h_act, eri_act)
    return {
        "r_angstrom": r_angstrom,
        "e_nuc": e_nuc,
        "e_rhf": e_elec + e_nuc,
        "e_fci": e_fci + e_nuc,
        "noons": w,
        "c_nmo": c_nmo,
        "h_nmo": h_nmo,
        "eri_nmo": eri_nmo,
        "h1_act": h1a,
        "h2_act": h2a,
        "s": s,
    }


def active_fermion_terms(sys):
    return qmap.molecular_fermion_terms(sys["h1_act"], sys["h2_act"])


def bk8(sys):
    return qmap.psum_prune(
        qmap.transform(active_fermion_terms(sys), 8, "bk"), 1e-10)


def reduce3(hbk, ref_mask=None):
    """Restrict to the entangling support and taper the spectators."""
    if ref_mask is None:
        ref_mask = qmap.bk_encode(0b00001111, 8)
    hres = qmap.restrict_support(hbk, set(SUPPORT))
    ht, removed, relabel, new_ref = qmap.taper(hres, 8, ref_mask)
    return ht, removed, relabel, new_ref


_G1 = qmap.dense(qmap.psum([(qmap.pstr_from_text("X0 Y1"), 1.0)]), 3)
_G2 = qmap.dense(qmap.psum([(qmap.pstr_from_text("X0 Y2"), 1.0)]), 3)


def ansatz_state(alpha, beta, ref_index):
    """|psi(alpha,beta)> = e^{-i beta X0 Y2} e^{-i alpha X0 Y1} |ref>."""
    st = np.zeros(8, dtype=complex)
    st[ref_index] = 1.0
    ua = np.cos(alpha) * np.eye(8) - 1j * np.sin(alpha) * _G1
    ub = np.cos(beta) * np.eye(8) - 1j * np.sin(beta) * _G2
    return ub @ (ua @ st)


def surface_min(h3_dense, ref_index, box=((1.5, 6.0), (2.0, 5.0))):
    """Grid + local refine of E(alpha,beta) inside the box."""
    def cost(p):
        st = ansatz_state(p[0], p[1], ref_index)
        return float((st.conj() @ h3_dense @ st).real)

    al = np.arange(box[0][0], box[0][1] + 1e-9, 0.1)
    be = np.arange(box[1][0], box[1][1] + 1e-9, 0.15)
    best, bp = np.inf, None
    for a in al:
        for b in be:
            e = cost((a, b))
            if e < best:
                best, bp = e, (a, b)
    res = scipy.optimize.minimize(cost, bp, method="Nelder-Mead",
                                  options={"xatol": 1e-10, "fatol": 1e-12,
                                           "maxiter": 2000})
    # E is pi-periodic per coordinate; report the in-box representative
    # nearest the grid argmin
    x = list(res.x)
    for i in range(2):
        lo, hi = box[i]
        cands = [res.x[i] % np.pi + k * np.pi for k in range(-1, 3)]
        cands = [cc for cc in cands if lo - 1e-9 <= cc <= hi + 1e-9]
        if cands:
            x[i] = min(cands, key=lambda cc: abs(cc - bp[i]))
    return res.fun, np.array(x), best, bp
