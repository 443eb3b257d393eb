"""Sanity anchors for the integral + SCF + FCI chain on H2/STO-3G."""

import numpy as np

import chem
import mdint


def main():
    fit = chem.load_basis_fit()
    r = 1.4
    shells, charges, centers = chem.h2_shells(r, fit)
    s, t, v, eri, basis = mdint.build_integrals(shells, charges, centers)
    print("S =\n", s)
    print("T11 =", t[0, 0], " V11 =", v[0, 0])
    print("(11|11) =", eri[0, 0, 0, 0])
    print("(11|22) =", eri[0, 0, 1, 1])
    print("(12|12) =", eri[0, 1, 0, 1])
    e_nuc = chem.nuclear_repulsion(charges, centers)
    e_elec, c, eps = chem.rhf(s, t, v, eri, 2)
    print("E_RHF(elec) =", e_elec, " E_nuc =", e_nuc,
          " total =", e_elec + e_nuc)
    h_mo, eri_mo = chem.mo_transform(c, t + v, eri)
    h1, h2 = chem.spinorb_integrals(h_mo, eri_mo)
    e0, vec, dets = chem.fci_ground(h1, h2, 4, 2, sz2=0)
    print("E_FCI total =", e0 + e_nuc)
    # MO integrals used downstream
    print("h_mo diag =", np.diag(h_mo))
    print("(11|11)_mo =", eri_mo[0, 0, 0, 0], "(11|22)_mo =",
          eri_mo[0, 0, 1, 1], "(12|12)_mo =", eri_mo[0, 1, 0, 1],
          "(22|22)_mo =", eri_mo[1, 1, 1, 1])


if __name__ == "__main__":
    main()
