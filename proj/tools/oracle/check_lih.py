"""Structural checks of the LiH chain at R = 1.6 Angstrom."""

import numpy as np

import chem
import lih_chain
import qmap


def main():
    fit = chem.load_basis_fit()
    sys = lih_chain.lih_system(1.6, fit)
    print("E_RHF =", sys["e_rhf"], " E_FCI =", sys["e_fci"])
    print("NOONs:", np.round(sys["noons"], 6))
    # expected character: core ~2, valence sigma, sigma*, then the
    # degenerate p pair, then the last sigma
    w = sys["noons"]
    assert w[0] > 1.99 and 1.5 < w[1] < 2.0
    assert w[2] > w[3] >= w[4] > w[5] - 1e-12
    assert abs(w[3] - w[4]) < 1e-8  # px/py degeneracy
    # AO order: [Li1s, Li2s, px, py, pz, H1s]; NMO3 should be px, NMO4 py
    c = sys["c_nmo"]
    assert abs(c[2, 3]) > 0.99 and abs(c[3, 4]) > 0.99, c
    print("NMO ordering/canonicalization OK")

    # CASCI in the 4-orbital active space vs full FCI
    e_cas, vec, dets = chem.fci_ground(sys["h1_act"], sys["h2_act"],
                                       8, 4, sz2=0)
    e_cas_tot = e_cas + sys["e_nuc"]
    print("E_CASCI(4e,4o) =", e_cas_tot,
          " vs FCI:", sys["e_fci"], " diff:", e_cas_tot - sys["e_fci"])
    assert 0 <= e_cas_tot - sys["e_fci"] < 5e-3

    # HF reference energy in the register
    hf_mask = 0b00001111
    idx = dets.index(hf_mask)
    ham = chem.build_hamiltonian(sys["h1_act"], sys["h2_act"], dets)
    e_hf_act = ham[idx, idx] + sys["e_nuc"]
    print("<HF|H|HF> (NMO) =", e_hf_act, " vs RHF:", sys["e_rhf"])
    assert e_hf_act >= sys["e_rhf"] - 1e-9
    assert e_hf_act - sys["e_rhf"] < 5e-3

    # BK on 8 modes
    hbk = lih_chain.bk8(sys)
    print("8-mode BK term count:", len(hbk))
    ref_bk = qmap.bk_encode(hf_mask, 8)
    print(f"BK reference: |{ref_bk:08b}>")
    assert ref_bk == 0b00000101

    # number operator
    nterms = [(1.0, [(p, True), (p, False)]) for p in range(8)]
    nop = qmap.dense(qmap.transform(nterms, 8, "bk"), 8)
    assert abs(nop[ref_bk, ref_bk].real - 4.0) < 1e-12
    print("number operator on BK reference OK")

    # ground state of the dense BK H in the 4-electron sector
    hd = qmap.dense(hbk, 8)
    nvals = np.real(np.diag(nop))
    sector = [b for b in range(256) if abs(nvals[b] - 4.0) < 1e-9]
    hsec = hd[np.ix_(sector, sector)]
    wsec = np.linalg.eigvalsh(hsec)
    print("BK 4e-sector ground =", wsec[0] + sys["e_nuc"],
          " vs CASCI:", e_cas_tot)
    assert abs(wsec[0] + sys["e_nuc"] - e_cas_tot) < 1e-9

    # the two printed double-excitation exponents
    d1 = [(1.0, [(5, True), (4, True), (3, False), (2, False)]),
          (-1.0, [(2, True), (3, True), (4, False), (5, False)])]
    g1 = qmap.psum_prune(qmap.transform(d1, 8, "bk"), 1e-12)
    exp1 = {
        "X2 Y4": +0.125j, "Z1 X2 Z3 Y4": +0.125j,
        "Y2 X4": -0.125j, "Z1 Y2 Z3 X4": -0.125j,
        "Y2 X4 Z5": -0.125j, "Z1 Y2 Z3 X4 Z5": -0.125j,
        "X2 Y4 Z5": +0.125j, "Z1 X2 Z3 Y4 Z5": +0.125j,
    }
    assert len(g1) == 8
    for txt, cval in exp1.items():
        got = g1[qmap.pstr_from_text(txt)]
        assert abs(got - cval) < 1e-12, (txt, got)
    print("first double: printed 8-term BK exponent OK")

    d2 = [(1.0, [(7, True), (6, True), (3, False), (2, False)]),
          (-1.0, [(2, True), (3, True), (6, False), (7, False)])]
    g2 = qmap.psum_prune(qmap.transform(d2, 8, "bk"), 1e-12)
    assert len(g2) == 8
    qubits2 = set()
    for st in g2:
        qubits2 |= {q for q, _ in st}
    print("second double acts on qubits:", sorted(qubits2))
    for st in sorted(g2, key=lambda x: (len(x), x)):
        print(f"  {qmap.pstr_text(st):22s} {g2[st].imag:+.6f}i")

    # subterm selection: the single Pauli string retained per double
    # is the one acting as X2 Y4 / X2 Y6
    sub1 = qmap.pstr_from_text("X2 Y4")
    sub2 = qmap.pstr_from_text("X2 Y6")
    assert sub1 in g1 and g1[sub1] == 0.125j
    assert sub2 in g2, sorted(qmap.pstr_text(s) for s in g2)
    print("subterm generators X2Y4 / X2Y6 present, coeff",
          g1[sub1], g2[sub2])

    # reduction to 3 qubits
    h3, removed, relabel, ref3 = lih_chain.reduce3(hbk, ref_bk)
    print("removed:", removed, " relabel:", relabel, f" ref3: |{ref3:03b}>")
    assert relabel == {2: 0, 4: 1, 6: 2}
    assert ref3 == 0b001
    structure = sorted(h3, key=lambda x: (len(x), x))
    print("3-qubit H terms:", len(h3))
    for st in structure:
        print(f"  {qmap.pstr_text(st) or 'I':10s} {h3[st].real:+.10f}")
    expected = ["", "Z0", "Z1", "Z2", "Z0 Z1", "Z0 Z2", "Z1 Z2",
                "X0 X1", "Y0 Y1", "X0 X2", "Y0 Y2", "X1 X2", "Y1 Y2"]
    assert set(h3) == {qmap.pstr_from_text(x) for x in expected}, \
        sorted(qmap.pstr_text(s) for s in h3)
    print("13-term structure OK")

    # untruncated 3-qubit ground vs the 2-parameter ansatz minimum
    h3d = qmap.dense(h3, 3)
    w3 = np.linalg.eigvalsh(h3d)
    e3 = w3[0] + sys["e_nuc"]
    print("3-qubit ground =", e3, " (CASCI:", e_cas_tot, ")")
    fun, xopt, gridbest, gridpt = lih_chain.surface_min(h3d, ref3)
    print("ansatz min in box =", fun + sys["e_nuc"], " at", xopt,
          " grid best", gridbest + sys["e_nuc"], "at", gridpt)
    margin = fun - w3[0]
    print("subterm margin =", margin)
    assert margin < 1.6e-3

    # global minimum over (-pi/2, pi/2]^2 shifted: period pi in each
    best_glob, best_pt = np.inf, None
    for a in np.arange(0, np.pi, 0.02):
        for b in np.arange(0, np.pi, 0.02):
            st = lih_chain.ansatz_state(a, b, ref3)
            e = float((st.conj() @ h3d @ st).real)
            if e < best_glob:
                best_glob, best_pt = e, (a, b)
    import scipy.optimize
    res = scipy.optimize.minimize(
        lambda p: float((lih_chain.ansatz_state(p[0], p[1], ref3).conj()
                         @ h3d @ lih_chain.ansatz_state(p[0], p[1], ref3))
                        .real),
        best_pt, method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-14})
    print("global min =", res.fun + sys["e_nuc"], "at", res.x,
          " (mod pi):", np.mod(res.x, np.pi))
    print("box min equals global min:", abs(res.fun - fun) < 1e-9)

    # energy at (0,0) = reference energy
    st0 = lih_chain.ansatz_state(0.0, 0.0, ref3)
    e00 = float((st0.conj() @ h3d @ st0).real)
    print("E(0,0) =", e00 + sys["e_nuc"], " vs <HF|H|HF>:", e_hf_act)
    assert abs(e00 + sys["e_nuc"] - e_hf_act) < 1e-9

    # 12-mode full-space BK term count
    h1f, h2f = chem.spinorb_integrals(sys["h_nmo"], sys["eri_nmo"])
    fterms = qmap.molecular_fermion_terms(h1f, h2f)
    hfull = qmap.psum_prune(qmap.transform(fterms, 12, "bk"), 1e-10)
    print("12-mode BK term count:", len(hfull))


if __name__ == "__main__":
    main()
