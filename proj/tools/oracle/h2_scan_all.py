"""Run the H2 chain over the full R grid, validate per-R invariants,
and cache everything the table generator needs."""

import pickle

import numpy as np

import chem
import mdint
import qmap

R_GRID = [round(0.3 + 0.05 * k, 2) for k in range(55)]

BK15 = ["", "Z0", "Z1", "Z2", "Z0 Z1", "Z0 Z2", "Z1 Z3",
        "X0 Z1 X2", "Y0 Z1 Y2", "Z0 Z1 Z2", "Z0 Z2 Z3", "Z1 Z2 Z3",
        "X0 Z1 X2 Z3", "Y0 Z1 Y2 Z3", "Z0 Z1 Z2 Z3"]
JW15 = ["", "Z0", "Z1", "Z2", "Z3", "Z0 Z1", "Z0 Z2", "Z0 Z3",
        "Z1 Z2", "Z1 Z3", "Z2 Z3",
        "X0 X1 Y2 Y3", "X0 Y1 Y2 X3", "Y0 X1 X2 Y3", "Y0 Y1 X2 X3"]
TAP6 = ["", "Z0", "Z1", "Z0 Z1", "X0 X1", "Y0 Y1"]


def main():
    fit = chem.load_basis_fit()
    rows = []
    for r in R_GRID:
        r_bohr = r * chem.ANGSTROM_TO_BOHR
        shells, charges, centers = chem.h2_shells(r_bohr, fit)
        s, t, v, eri, basis = mdint.build_integrals(shells, charges, centers)
        e_nuc = chem.nuclear_repulsion(charges, centers)
        e_elec, c_mo, eps = chem.rhf(s, t, v, eri, 2)
        h_mo, eri_mo = chem.mo_transform(c_mo, t + v, eri)
        h1, h2 = chem.spinorb_integrals(h_mo, eri_mo)
        e_fci, vec, dets = chem.fci_ground(h1, h2, 4, 2, sz2=0)
        fterms = qmap.molecular_fermion_terms(h1, h2)
        hbk = qmap.psum_prune(qmap.transform(fterms, 4, "bk"), 1e-10)
        hjw = qmap.psum_prune(qmap.transform(fterms, 4, "jw"), 1e-10)
        assert set(hbk) == {qmap.pstr_from_text(x) for x in BK15}, \
            (r, sorted(qmap.pstr_text(x) for x in hbk))
        assert set(hjw) == {qmap.pstr_from_text(x) for x in JW15}, \
            (r, sorted(qmap.pstr_text(x) for x in hjw))

        ref_bk = qmap.bk_encode(0b0011, 4)
        assert ref_bk == 0b0001
        ht, removed, relabel, ref2 = qmap.taper(hbk, 4, ref_bk)
        assert removed == {1: 1, 3: 1} and ref2 == 0b01, (r, removed)
        assert set(ht) == {qmap.pstr_from_text(x) for x in TAP6}, (r,)
        cs = [ht[qmap.pstr_from_text(x)].real for x in TAP6]

        # sector safety: dense 4x4 ground equals the FCI sector ground
        m2 = qmap.dense(ht, 2)
        w4 = np.linalg.eigvalsh(m2)
        assert abs(w4[0] - e_fci) < 1e-10, (r, w4[0], e_fci)

        # sinusoid: E(t) = (c0-c3) + (c2-c1)cos2t - (c4+c5)sin2t
        amp = np.hypot(cs[2] - cs[1], cs[4] + cs[5])
        e_min = cs[0] - cs[3] - amp
        assert abs(e_min - e_fci) < 1e-12, (r, e_min, e_fci)
        theta_opt = 0.5 * np.arctan2(-(cs[4] + cs[5]), cs[2] - cs[1])
        # pick the branch that attains the minimum
        e_at = (cs[0] - cs[3] + (cs[2] - cs[1]) * np.cos(2 * theta_opt)
                - (cs[4] + cs[5]) * np.sin(2 * theta_opt))
        if abs(e_at - e_min) > 1e-10:
            theta_opt += np.pi / 2
            e_at = (cs[0] - cs[3] + (cs[2] - cs[1]) * np.cos(2 * theta_opt)
                    - (cs[4] + cs[5]) * np.sin(2 * theta_opt))
        assert abs(e_at - e_min) < 1e-10, (r, e_at, e_min)

        # FCI amplitude of the double (3^ 2^ 1 0); singles vanish
        idx = {d: i for i, d in enumerate(dets)}
        c_hf = vec[idx[0b0011]]
        c_dd = vec[idx[0b1100]]
        t_amp = c_dd / c_hf
        for (vv, oo) in [(2, 0), (3, 1), (2, 1), (3, 0)]:
            new, sign = chem.apply_ladder(0b0011,
                                          [(vv, True), (oo, False)])
            if new in idx:
                assert abs(vec[idx[new]]) < 1e-10, (r, vv, oo)

        # shot count for 1.6e-3 Ha at the optimum
        st = np.zeros(4, dtype=complex)
        st[1] = np.cos(theta_opt)
        st[2] = -np.sin(theta_opt)
        var_sum = 0.0
        for txt in TAP6[1:]:
            op = qmap.dense(qmap.psum([(qmap.pstr_from_text(txt), 1.0)]), 2)
            mexp = float((st.conj() @ op @ st).real)
            cl = ht[qmap.pstr_from_text(txt)].real
            var_sum += cl * cl * (1.0 - mexp * mexp)
        shots = int(np.ceil(var_sum / 1.6e-3 ** 2))

        print(f"R={r:5.2f} E_rhf={e_elec + e_nuc:+.8f} "
              f"E_fci={e_fci + e_nuc:+.8f} theta*={theta_opt:+.4f} "
              f"t_amp={t_amp:+.4f} shots={shots}")
        rows.append({
            "r": r,
            "e_nuc": e_nuc,
            "e_rhf": e_elec + e_nuc,
            "e_fci": e_fci + e_nuc,
            "h1": h1,
            "h2": h2,
            "bk": {qmap.pstr_text(k): val.real for k, val in hbk.items()},
            "jw": {qmap.pstr_text(k): val.real for k, val in hjw.items()},
            "tapered": {qmap.pstr_text(k): val.real
                        for k, val in ht.items()},
            "theta_opt": float(theta_opt),
            "t_amp": float(t_amp),
            "shots_1p6mHa": shots,
        })
    eq = min(rows, key=lambda row: row["e_fci"])
    print("equilibrium R:", eq["r"], " E_fci:", eq["e_fci"],
          " shots:", eq["shots_1p6mHa"])
    assert 5000 <= eq["shots_1p6mHa"] <= 45000
    with open("h2_cache.pkl", "wb") as f:
        pickle.dump(rows, f)
    print("cached", len(rows), "geometries")


if __name__ == "__main__":
    main()
