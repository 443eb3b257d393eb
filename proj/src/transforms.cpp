#include "tivqe/transforms.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace tivqe {

PauliSum jw_ladder(int mode, bool dagger) {
    std::vector<std::pair<int, Axis>> x_ops, y_ops;
    for (int q = 0; q < mode; ++q) {
        x_ops.emplace_back(q, Axis::Z);
        y_ops.emplace_back(q, Axis::Z);
    }
    x_ops.emplace_back(mode, Axis::X);
    y_ops.emplace_back(mode, Axis::Y);
    PauliSum out;
    out.add(PauliString(std::move(x_ops)), 0.5);
    out.add(PauliString(std::move(y_ops)), dagger ? cplx(0, -0.5) : cplx(0, 0.5));
    return out;
}

namespace {

void fenwick_rec(int lo, int hi, std::map<int, int>& parent) {
    if (lo >= hi) return;
    const int mid = (lo + hi) / 2;
    parent[mid] = hi;
    fenwick_rec(lo, mid, parent);
    fenwick_rec(mid + 1, hi, parent);
}

}  // namespace

std::map<int, int> fenwick_parents(int n_modes) {
    if (n_modes <= 0) throw std::invalid_argument("need at least one mode");
    std::map<int, int> parent;
    fenwick_rec(0, n_modes - 1, parent);
    return parent;
}

BkSets bk_sets(int n_modes) {
    const auto parent = fenwick_parents(n_modes);
    std::vector<std::vector<int>> children(n_modes);
    for (const auto& [c, p] : parent) children[p].push_back(c);

    // subtree[j]: modes whose occupation parity qubit j stores
    std::vector<std::set<int>> subtree(n_modes);
    // children indices are always below the parent, so ascending order works
    for (int j = 0; j < n_modes; ++j) {
        subtree[j].insert(j);
        for (int c : children[j])
            subtree[j].insert(subtree[c].begin(), subtree[c].end());
    }

    BkSets sets;
    sets.n_modes = n_modes;
    sets.update.resize(n_modes);
    sets.parity.resize(n_modes);
    sets.flip.resize(n_modes);
    sets.remainder.resize(n_modes);

    for (int j = 0; j < n_modes; ++j) {
        for (int k = j; parent.count(k);) {
            k = parent.at(k);
            sets.update[j].push_back(k);
        }
        std::sort(sets.update[j].begin(), sets.update[j].end());
        sets.flip[j] = children[j];
        std::sort(sets.flip[j].begin(), sets.flip[j].end());
    }

    // P(j): greedy cover of {0..j-1} by whole subtrees, largest first
    std::vector<int> by_size(n_modes);
    for (int q = 0; q < n_modes; ++q) by_size[q] = q;
    std::stable_sort(by_size.begin(), by_size.end(), [&](int a, int b) {
        return subtree[a].size() > subtree[b].size();
    });
    for (int j = 0; j < n_modes; ++j) {
        std::set<int> rem;
        for (int k = 0; k < j; ++k) rem.insert(k);
        for (int q : by_size) {
            if (rem.empty()) break;
            if (q == j) continue;
            if (std::includes(rem.begin(), rem.end(), subtree[q].begin(),
                              subtree[q].end())) {
                sets.parity[j].push_back(q);
                for (int m : subtree[q]) rem.erase(m);
            }
        }
        if (!rem.empty())
            throw std::logic_error("parity cover failed");
        std::sort(sets.parity[j].begin(), sets.parity[j].end());

        // rho = P minus F for every mode; at power-of-two sizes even modes
        // are leaves with empty F, recovering the familiar even/odd split
        std::set_difference(sets.parity[j].begin(), sets.parity[j].end(),
                            sets.flip[j].begin(), sets.flip[j].end(),
                            std::back_inserter(sets.remainder[j]));
    }
    return sets;
}

PauliSum bk_ladder(int mode, bool dagger, const BkSets& sets) {
    if (mode < 0 || mode >= sets.n_modes)
        throw std::invalid_argument("mode outside the encoded register");
    std::vector<std::pair<int, Axis>> c_ops, d_ops;
    for (int q : sets.update[mode]) {
        c_ops.emplace_back(q, Axis::X);
        d_ops.emplace_back(q, Axis::X);
    }
    c_ops.emplace_back(mode, Axis::X);
    d_ops.emplace_back(mode, Axis::Y);
    for (int q : sets.parity[mode]) c_ops.emplace_back(q, Axis::Z);
    for (int q : sets.remainder[mode]) d_ops.emplace_back(q, Axis::Z);
    PauliSum out;
    out.add(PauliString(std::move(c_ops)), 0.5);
    out.add(PauliString(std::move(d_ops)), dagger ? cplx(0, -0.5) : cplx(0, 0.5));
    return out;
}

uint64_t bk_encode(uint64_t occupation, int n_modes) {
    const auto parent = fenwick_parents(n_modes);
    std::vector<std::vector<int>> children(n_modes);
    for (const auto& [c, p] : parent) children[p].push_back(c);
    std::vector<uint64_t> subtree_mask(n_modes, 0);
    for (int j = 0; j < n_modes; ++j) {
        subtree_mask[j] = uint64_t(1) << j;
        for (int c : children[j]) subtree_mask[j] |= subtree_mask[c];
    }
    uint64_t mask = 0;
    for (int j = 0; j < n_modes; ++j)
        mask |= uint64_t(std::popcount(occupation & subtree_mask[j]) & 1)
                << j;
    return mask;
}

PauliSum transform(const FermionSum& f, int n_modes, Mapping mapping) {
    if (f.max_mode() >= n_modes)
        throw std::invalid_argument("mode index exceeds register size");
    const BkSets sets = mapping == Mapping::bk ? bk_sets(n_modes) : BkSets{};

    std::vector<std::vector<PauliSum>> ladder(2,
                                              std::vector<PauliSum>(n_modes));
    for (int m = 0; m < n_modes; ++m)
        for (int d = 0; d < 2; ++d)
            ladder[d][m] = mapping == Mapping::jw
                               ? jw_ladder(m, d)
                               : bk_ladder(m, d, sets);

    // accumulate unpruned; one prune at the end keeps near-threshold terms
    // built from many small contributions
    std::map<PauliString, cplx> total;
    for (const auto& [term, coeff] : f) {
        std::map<PauliString, cplx> acc{{PauliString(), 1.0}};
        for (const auto& op : term.ops()) {
            const PauliSum& lp = ladder[op.create ? 1 : 0][op.mode];
            std::map<PauliString, cplx> next;
            for (const auto& [sa, ca] : acc)
                for (const auto& [sb, cb] : lp) {
                    auto [phase, s] = multiply(sa, sb);
                    next[s] += phase * ca * cb;
                }
            acc = std::move(next);
        }
        for (const auto& [s, c] : acc) total[s] += coeff * c;
    }
    PauliSum out;
    for (const auto& [s, c] : total) out.add(s, c);
    return out;
}

std::vector<int> iz_only_qubits(const PauliSum& h, int n_qubits) {
    std::vector<bool> bad(n_qubits, false);
    for (const auto& [s, c] : h)
        for (const auto& [q, a] : s.ops())
            if (a != Axis::Z) bad[size_t(q)] = true;
    std::vector<int> out;
    for (int q = 0; q < n_qubits; ++q)
        if (!bad[size_t(q)]) out.push_back(q);
    return out;
}

TaperResult taper(const PauliSum& h, int n_qubits, uint64_t reference) {
    if (h.max_qubit() >= n_qubits)
        throw std::invalid_argument("qubit index exceeds register size");
    TaperResult res;
    const std::vector<int> removable = iz_only_qubits(h, n_qubits);
    std::vector<bool> is_removed(n_qubits, false);
    for (int q : removable) {
        is_removed[size_t(q)] = true;
        res.removed[q] = (reference >> q) & 1 ? -1 : 1;
    }
    int next = 0;
    for (int q = 0; q < n_qubits; ++q)
        if (!is_removed[size_t(q)]) res.relabel[q] = next++;

    for (const auto& [s, c] : h) {
        cplx fac = c;
        std::vector<std::pair<int, Axis>> ops;
        for (const auto& [q, a] : s.ops()) {
            if (is_removed[size_t(q)])
                fac *= double(res.removed.at(q));
            else
                ops.emplace_back(res.relabel.at(q), a);
        }
        res.hamiltonian.add(PauliString(std::move(ops)), fac);
    }
    for (const auto& [q, nq] : res.relabel)
        if ((reference >> q) & 1) res.reference |= uint64_t(1) << nq;
    return res;
}

PauliSum restrict_support(const PauliSum& h,
                          const std::vector<int>& support) {
    std::set<int> keep(support.begin(), support.end());
    PauliSum out;
    for (const auto& [s, c] : h) {
        bool drop = false;
        for (const auto& [q, a] : s.ops())
            if (a != Axis::Z && !keep.count(q)) {
                drop = true;
                break;
            }
        if (!drop) out.add(s, c);
    }
    return out;
}

PauliSum apply_taper(const PauliSum& h, const TaperResult& t) {
    PauliSum out;
    for (const auto& [s, c] : h) {
        cplx fac = c;
        std::vector<std::pair<int, Axis>> ops;
        for (const auto& [q, a] : s.ops()) {
            const auto rem = t.removed.find(q);
            if (rem != t.removed.end()) {
                if (a != Axis::Z)
                    throw std::invalid_argument(
                        "operator leaves the tapered symmetry sector");
                fac *= double(rem->second);
            } else {
                ops.emplace_back(t.relabel.at(q), a);
            }
        }
        out.add(PauliString(std::move(ops)), fac);
    }
    return out;
}

}  // namespace tivqe
