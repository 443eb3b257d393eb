"""Cross-checks of qmap.py on the H2/STO-3G system."""

import numpy as np

import chem
import mdint
import qmap


def expm_ipauli(a, n, t=1.0):
    """exp(t * dense(a)) by eigendecomposition (a anti-Hermitian here)."""
    import scipy.linalg
    return scipy.linalg.expm(t * qmap.dense(a, n))


def main():
    fit = chem.load_basis_fit()
    shells, charges, centers = chem.h2_shells(1.4, fit)
    s, t, v, eri, basis = mdint.build_integrals(shells, charges, centers)
    e_nuc = chem.nuclear_repulsion(charges, centers)
    e_elec, c, eps = chem.rhf(s, t, v, eri, 2)
    h_mo, eri_mo = chem.mo_transform(c, t + v, eri)
    h1, h2 = chem.spinorb_integrals(h_mo, eri_mo)
    fterms = qmap.molecular_fermion_terms(h1, h2)

    hbk = qmap.psum_prune(qmap.transform(fterms, 4, "bk"), 1e-10)
    hjw = qmap.psum_prune(qmap.transform(fterms, 4, "jw"), 1e-10)

    print("== BK term structure ==")
    for st in sorted(hbk, key=lambda x: (len(x), x)):
        print(f"  {qmap.pstr_text(st) or 'I':22s} {hbk[st].real:+.10f}",
              f"(im {abs(hbk[st].imag):.1e})")
    expected_bk = [
        "", "Z0", "Z1", "Z2", "Z0 Z1", "Z0 Z2", "Z1 Z3",
        "X0 Z1 X2", "Y0 Z1 Y2", "Z0 Z1 Z2", "Z0 Z2 Z3", "Z1 Z2 Z3",
        "X0 Z1 X2 Z3", "Y0 Z1 Y2 Z3", "Z0 Z1 Z2 Z3",
    ]
    exp_set = {qmap.pstr_from_text(x) for x in expected_bk}
    assert set(hbk) == exp_set, set(hbk) ^ exp_set
    print("BK 15-term structure OK")

    print("== JW term structure ==")
    for st in sorted(hjw, key=lambda x: (len(x), x)):
        print(f"  {qmap.pstr_text(st) or 'I':22s} {hjw[st].real:+.10f}")

    # spectra agree (JW vs BK)
    wj = np.linalg.eigvalsh(qmap.dense(hjw, 4))
    wb = np.linalg.eigvalsh(qmap.dense(hbk, 4))
    assert np.max(np.abs(wj - wb)) < 1e-10
    print("JW/BK isospectral OK")

    # ground energy matches FCI
    e0, vec, dets = chem.fci_ground(h1, h2, 4, 2, sz2=0)
    print("FCI elec:", e0, " JW min eig:", wj[0])
    assert abs(wj[0] - e0) < 1e-10

    # HF reference states
    occ = 0b0011
    bkref = qmap.bk_encode(occ, 4)
    print(f"BK encode of |0011> occupations: {bkref:04b}")
    assert bkref == 0b0001

    # number operator expectation on HF state
    nterms = [(1.0, [(p, True), (p, False)]) for p in range(4)]
    for method, ref in (("jw", occ), ("bk", bkref)):
        nop = qmap.transform(nterms, 4, method)
        m = qmap.dense(nop, 4)
        val = m[ref, ref].real
        assert abs(val - 2.0) < 1e-12, (method, val)
    print("number operator on HF reference OK")

    # taper: qubits 1 and 3, eigenvalues +1, +1
    f = {qmap.pstr_from_text(x): hbk[qmap.pstr_from_text(x)].real
         for x in expected_bk}
    ht, removed, relabel, new_ref = qmap.taper(hbk, 4, bkref)
    print("removed:", removed, " relabel:", relabel,
          f" new_ref: {new_ref:02b}")
    assert removed == {1: 1, 3: 1} and relabel == {0: 0, 2: 1}
    assert new_ref == 0b01

    def g(txt):
        return f[qmap.pstr_from_text(txt)]

    c0 = g("") + g("Z1") + g("Z1 Z3")
    c1 = g("Z0") + g("Z0 Z1")
    c2 = g("Z2") + g("Z1 Z2 Z3")
    c3 = g("Z0 Z1 Z2") + g("Z0 Z2") + g("Z0 Z2 Z3") + g("Z0 Z1 Z2 Z3")
    c4 = g("X0 Z1 X2") + g("X0 Z1 X2 Z3")
    c5 = g("Y0 Z1 Y2") + g("Y0 Z1 Y2 Z3")
    want = {
        (): c0, qmap.pstr_from_text("Z0"): c1, qmap.pstr_from_text("Z1"): c2,
        qmap.pstr_from_text("Z0 Z1"): c3, qmap.pstr_from_text("X0 X1"): c4,
        qmap.pstr_from_text("Y0 Y1"): c5,
    }
    assert set(ht) == set(want)
    for st in want:
        assert abs(ht[st] - want[st]) < 1e-12, (st, ht[st], want[st])
    print("taper identities OK:", [round(x, 6) for x in
                                   (c0, c1, c2, c3, c4, c5)])

    # tapered ground energy in the 2-electron sector
    m2 = qmap.dense(ht, 2)
    # basis |q1 q0>: 00,01,10,11 -> indices 0,1,2,3. N=2 sector = {01, 10}.
    sector = m2[np.ix_([1, 2], [1, 2])]
    ws = np.linalg.eigvalsh(sector)
    assert abs(ws.min() - e0) < 1e-10
    print("tapered sector ground energy OK")

    # UCCSD double, descending ladder order: theta (a3^ a2^ a1 a0 - h.c.)
    gen = [(1.0, [(3, True), (2, True), (1, False), (0, False)]),
           (-1.0, [(0, True), (1, True), (2, False), (3, False)])]
    gbk = qmap.psum_prune(qmap.transform(gen, 4, "bk"), 1e-12)
    print("== BK UCCSD exponent (times i/theta) ==")
    for st in sorted(gbk, key=lambda x: (len(x), x)):
        cr = gbk[st]
        print(f"  {qmap.pstr_text(st):16s} {cr.real:+.6f} {cr.imag:+.6f}i")
    assert len(gbk) == 8
    expected_gen = {
        "Y0 X2": -0.125j, "X0 Y2": +0.125j,
        "Y0 Z1 X2": -0.125j, "X0 Z1 Y2": +0.125j,
        "Y0 X2 Z3": -0.125j, "X0 Y2 Z3": +0.125j,
        "Y0 Z1 X2 Z3": -0.125j, "X0 Z1 Y2 Z3": +0.125j,
    }
    for txt, cval in expected_gen.items():
        got = gbk[qmap.pstr_from_text(txt)]
        assert abs(got - cval) < 1e-12, (txt, got, cval)
    print("BK exponent coefficients match the printed form OK")
    for theta in np.linspace(-2.0, 2.0, 9):
        u_full = expm_ipauli(gbk, 4, theta)
        # reduced: exp(-i theta X1 Y0) on tapered qubits, embedded
        red = qmap.psum([(qmap.pstr_from_text("Y0 X1"), 1.0)])
        u_red = expm_ipauli(qmap.psum_scale(red, -1j), 2, theta)
        # compare action on |0001> vs |01>
        st4 = np.zeros(16, dtype=complex)
        st4[0b0001] = 1.0
        out4 = u_full @ st4
        st2 = np.zeros(4, dtype=complex)
        st2[0b01] = 1.0
        out2 = u_red @ st2
        # embed out2 back: q1->old q2, q0->old q0; old q1=0, q3=0
        emb = np.zeros(16, dtype=complex)
        for b2 in range(4):
            q0, q1 = b2 & 1, (b2 >> 1) & 1
            emb[q0 | (q1 << 2)] = out2[b2]
        err = np.max(np.abs(out4 - emb))
        assert err < 1e-10, (theta, err)
    print("BK exponent reduces to exp(-i theta X1 Y0) on |01> OK")

    # JW: action on |0011> equals exp(-i theta X3 X2 X1 Y0)
    gjw = qmap.psum_prune(qmap.transform(gen, 4, "jw"), 1e-12)
    assert len(gjw) == 8
    print("== JW UCCSD exponent (times 1/theta) ==")
    for st in sorted(gjw, key=lambda x: (len(x), x)):
        cr = gjw[st]
        print(f"  {qmap.pstr_text(st):16s} {cr.real:+.6f} {cr.imag:+.6f}i")
    for theta in np.linspace(-2.0, 2.0, 9):
        u_full = expm_ipauli(gjw, 4, theta)
        gen1 = qmap.psum([(qmap.pstr_from_text("Y0 X1 X2 X3"), -1j)])
        u_one = expm_ipauli(gen1, 4, theta)
        st4 = np.zeros(16, dtype=complex)
        st4[0b0011] = 1.0
        err = np.max(np.abs(u_full @ st4 - u_one @ st4))
        assert err < 1e-10, (theta, err)
    print("JW exponent action = exp(-i theta X3X2X1Y0) on |0011> OK")

    # energy curve on tapered H: U(theta)|01> = cos|01> - sin|10>
    for theta in (0.3, 1.1):
        u_red = expm_ipauli(
            qmap.psum([(qmap.pstr_from_text("Y0 X1"), -1j)]), 2, theta)
        st2 = np.zeros(4, dtype=complex)
        st2[1] = 1.0
        out = u_red @ st2
        want_v = np.zeros(4, dtype=complex)
        want_v[1] = np.cos(theta)
        want_v[2] = -np.sin(theta)
        assert np.max(np.abs(out - want_v)) < 1e-12
        e_theta = (out.conj() @ m2 @ out).real
        pred = (c0 - c3 + (c2 - c1) * np.cos(2 * theta)
                - (c4 + c5) * np.sin(2 * theta))
        assert abs(e_theta - pred) < 1e-12
    print("E(theta) = c0 - c3 + (c2-c1)cos2t - (c4+c5)sin2t OK")

    # minimum of E(theta) vs sector ground
    th = np.linspace(0, np.pi, 20001)
    evals = (c0 - c3 + (c2 - c1) * np.cos(2 * th)
             - (c4 + c5) * np.sin(2 * th))
    print("min_theta E =", evals.min() + e_nuc, " vs FCI =", e0 + e_nuc)
    assert abs(evals.min() - e0) < 1e-8


if __name__ == "__main__":
    main()
