"""Independent Pauli algebra + fermion-to-qubit transforms in Python.

Used to generate the bundled coefficient tables and as a cross-check
against the C++ implementation.  Conventions:
  - ket |q_{n-1} ... q_1 q_0>, qubit 0 least significant;
  - JW: a^_p -> (X_p - i Y_p)/2 . Z_{p-1} ... Z_0;
  - BK (Fenwick tree): c_j = X_{U(j)} X_j Z_{P(j)},
    d_j = X_{U(j)} Y_j Z_{rho(j)}, a^_j = (c_j - i d_j)/2.
A Pauli string is a tuple of (qubit, axis) sorted by qubit; the empty
tuple is the identity.
"""

from functools import reduce

import numpy as np

_MUL = {
    ("X", "X"): (1.0, "I"), ("Y", "Y"): (1.0, "I"), ("Z", "Z"): (1.0, "I"),
    ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
}

_M1 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pstr_mul(a, b):
    """Product of two Pauli strings; returns (phase, string)."""
    out = []
    phase = 1.0 + 0j
    da, db = dict(a), dict(b)
    for q in sorted(set(da) | set(db)):
        pa, pb = da.get(q, "I"), db.get(q, "I")
        if pa == "I":
            ax = pb
        elif pb == "I":
            ax = pa
        else:
            ph, ax = _MUL[(pa, pb)]
            phase *= ph
        if ax != "I":
            out.append((q, ax))
    return phase, tuple(out)


def psum(terms=None):
    """PauliSum as dict {string: complex}."""
    d = {}
    if terms:
        for s, c in terms:
            d[s] = d.get(s, 0.0) + c
    return d


def psum_add(a, b, cb=1.0):
    out = dict(a)
    for s, c in b.items():
        out[s] = out.get(s, 0.0) + cb * c
    return out


def psum_mul(a, b):
    out = {}
    for sa, ca in a.items():
        for sb, cb in b.items():
            ph, s = pstr_mul(sa, sb)
            out[s] = out.get(s, 0.0) + ca * cb * ph
    return out


def psum_scale(a, k):
    return {s: k * c for s, c in a.items()}


def psum_prune(a, tol=1e-10):
    return {s: c for s, c in a.items() if abs(c) > tol}


def pstr_text(s):
    return " ".join(f"{ax}{q}" for q, ax in s)


def pstr_from_text(t):
    t = t.strip()
    if not t:
        return ()
    out = []
    for tok in t.split():
        out.append((int(tok[1:]), tok[0]))
    out.sort()
    return tuple(out)


def dense_pstr(s, n):
    ops = [_M1["I"]] * n
    for q, ax in s:
        ops[q] = _M1[ax]
    # qubit 0 least significant -> rightmost kron factor
    return reduce(np.kron, ops[::-1])


def dense(a, n):
    m = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for s, c in a.items():
        m += c * dense_pstr(s, n)
    return m


# --- Jordan-Wigner ---------------------------------------------------------

def jw_ladder(mode, dagger):
    z_tail = tuple((q, "Z") for q in range(mode))
    x = z_tail + ((mode, "X"),)
    y = z_tail + ((mode, "Y"),)
    sgn = -1j if dagger else 1j
    return psum([(x, 0.5), (y, 0.5 * sgn)])


# --- Bravyi-Kitaev (Fenwick tree) ------------------------------------------

def fenwick_parent(n):
    """parent[j] for j in 0..n-2 via the recursive pairing of
    FENWICK(0, n-1)."""
    parent = {}

    def rec(lo, hi):
        if lo >= hi:
            return
        mid = (lo + hi) // 2
        parent[mid] = hi
        rec(lo, mid)
        rec(mid + 1, hi)

    rec(0, n - 1)
    return parent


def bk_sets(n):
    """Returns (update U, parity P, flip F, remainder rho) per mode."""
    parent = fenwick_parent(n)
    children = {j: set() for j in range(n)}
    for c, p in parent.items():
        children[p].add(c)
    upd = {}
    for j in range(n):
        u = set()
        k = j
        while k in parent:
            k = parent[k]
            u.add(k)
        upd[j] = u
    # subtree(j): modes whose occupation parity qubit j stores
    sub = {}

    def subtree(j):
        if j in sub:
            return sub[j]
        s = {j}
        for c in children[j]:
            s |= subtree(c)
        sub[j] = s
        return s

    for j in range(n):
        subtree(j)
    par = {}
    for j in range(n):
        # P(j): qubits whose stored parities sum to parity of modes < j
        want = set(range(j))
        p = set()
        rem = set(want)
        # greedy from the highest qubit whose subtree fits
        for q in sorted(range(n), key=lambda q: -len(sub[q])):
            if q == j:
                continue
            if sub[q] <= rem and sub[q]:
                p.add(q)
                rem -= sub[q]
            if not rem:
                break
        assert not rem, (n, j)
        par[j] = p
    flip = {j: set(children[j]) for j in range(n)}
    # rho = P - F for every mode; the even/odd special case only holds at
    # power-of-two n where even modes are leaves
    rho = {j: set(par[j]) - flip[j] for j in range(n)}
    return upd, par, flip, rho


def bk_ladder(mode, dagger, n, sets=None):
    upd, par, flip, rho = sets if sets else bk_sets(n)
    cx = tuple(sorted([(q, "X") for q in upd[mode]] + [(mode, "X")]
                      + [(q, "Z") for q in par[mode]]))
    dy = tuple(sorted([(q, "X") for q in upd[mode]] + [(mode, "Y")]
                      + [(q, "Z") for q in rho[mode]]))
    sgn = -1j if dagger else 1j
    return psum([(cx, 0.5), (dy, 0.5 * sgn)])


def bk_encode(occ_mask, n):
    """Occupation bitmask -> BK qubit bitmask."""
    parent = fenwick_parent(n)
    children = {j: set() for j in range(n)}
    for c, p in parent.items():
        children[p].add(c)

    sub = {}

    def subtree(j):
        if j in sub:
            return sub[j]
        s = {j}
        for c in children[j]:
            s |= subtree(c)
        sub[j] = s
        return s

    mask = 0
    for j in range(n):
        par_bit = sum((occ_mask >> k) & 1 for k in subtree(j)) % 2
        mask |= par_bit << j
    return mask


# --- fermion sums ----------------------------------------------------------

def transform(fermion_terms, n, method):
    """fermion_terms: list of (coeff, [(mode, dagger), ...]) leftmost
    applied last.  Returns PauliSum."""
    sets = bk_sets(n) if method == "bk" else None
    out = {}
    for coeff, ladder in fermion_terms:
        acc = psum([((), 1.0)])
        for mode, dagger in ladder:
            if method == "jw":
                op = jw_ladder(mode, dagger)
            else:
                op = bk_ladder(mode, dagger, n, sets)
            acc = psum_mul(acc, op)
        out = psum_add(out, acc, coeff)
    return psum_prune(out, 1e-12)


def molecular_fermion_terms(h1, h2_phys):
    """h1[p,q] p^ q + 1/2 h2[p,q,r,s] p^ q^ s r over spin orbitals."""
    m = h1.shape[0]
    terms = []
    for p in range(m):
        for q in range(m):
            if abs(h1[p, q]) > 1e-12:
                terms.append((h1[p, q], [(p, True), (q, False)]))
    for p in range(m):
        for q in range(m):
            for r in range(m):
                for s in range(m):
                    c = 0.5 * h2_phys[p, q, r, s]
                    if abs(c) > 1e-12:
                        terms.append(
                            (c, [(p, True), (q, True), (s, False),
                                 (r, False)]))
    return terms


# --- taper / restrict ------------------------------------------------------

def iz_only_qubits(a, n):
    bad = set()
    for s, _ in a.items():
        for q, ax in s:
            if ax in ("X", "Y"):
                bad.add(q)
    return [q for q in range(n) if q not in bad]


def taper(a, n, ref_mask):
    """Substitute Z eigenvalues from ref on every I/Z-only qubit, then
    compact-relabel.  Returns (psum, removed {q: eig}, relabel {old: new},
    new_ref_mask)."""
    removable = iz_only_qubits(a, n)
    retained = [q for q in range(n) if q not in removable]
    relabel = {q: i for i, q in enumerate(retained)}
    removed = {q: (-1 if (ref_mask >> q) & 1 else 1) for q in removable}
    out = {}
    for s, c in a.items():
        fac = c
        ns = []
        for q, ax in s:
            if q in removed:
                fac *= removed[q]
            else:
                ns.append((relabel[q], ax))
        ns = tuple(sorted(ns))
        out[ns] = out.get(ns, 0.0) + fac
    new_ref = 0
    for q in retained:
        if (ref_mask >> q) & 1:
            new_ref |= 1 << relabel[q]
    return psum_prune(out, 1e-12), removed, relabel, new_ref


def restrict_support(a, support):
    """Drop terms acting with X or Y outside `support` (partial
    expectation over spectator qubits in the computational basis)."""
    out = {}
    for s, c in a.items():
        if any(ax in ("X", "Y") and q not in support for q, ax in s):
            continue
        out[s] = out.get(s, 0.0) + c
    return out
