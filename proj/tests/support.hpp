#pragma once

#include "lipbar/barcode_metrics.hpp"
#include "lipbar/complex.hpp"
#include "lipbar/persistence.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

// Shared deterministic generators and independent oracles for the test
// suites.  Oracles deliberately avoid the code paths they check.

namespace testsupport {

using namespace lipbar;

using Rng = std::mt19937;

inline Rat random_dyadic(Rng& rng, int lo = 0, int hi = 16, int denom_pow = 1) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Rat(d(rng), 1 << denom_pow);
}

// Random simplicial complex with at most max_cells cells, valid filtration.
inline FilteredComplex random_complex(Rng& rng, int max_cells, int field = 2) {
    std::uniform_int_distribution<int> nv_d(1, std::min(5, max_cells));
    int nv = nv_d(rng);
    std::vector<Cell> cells;
    CellId next = 0;
    for (int v = 0; v < nv; ++v)
        cells.push_back(Cell{next++, 0, {}, random_dyadic(rng, 0, 8)});

    // Edges between distinct vertices, no duplicates.
    std::set<std::pair<int, int>> used;
    std::map<std::pair<int, int>, CellId> eid;
    std::uniform_int_distribution<int> v_d(0, nv - 1);
    int edge_budget = std::max(0, max_cells - nv - 2);
    std::uniform_int_distribution<int> ne_d(0, std::min(edge_budget, nv * (nv - 1) / 2));
    int ne = ne_d(rng);
    for (int e = 0; e < ne; ++e) {
        int a = v_d(rng), b = v_d(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (!used.insert({a, b}).second) continue;
        Rat f = std::max(cells[a].filtration, cells[b].filtration) + random_dyadic(rng, 0, 4);
        eid[{a, b}] = next;
        cells.push_back(Cell{next++, 1,
                             {{static_cast<CellId>(a), -1}, {static_cast<CellId>(b), 1}},
                             f});
    }
    // Triangles over existing edge triples.
    std::vector<std::array<int, 3>> tri_candidates;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b)
            for (int c = b + 1; c < nv; ++c)
                if (used.count({a, b}) && used.count({b, c}) && used.count({a, c}))
                    tri_candidates.push_back({a, b, c});
    std::shuffle(tri_candidates.begin(), tri_candidates.end(), rng);
    for (const auto& t : tri_candidates) {
        if (static_cast<int>(cells.size()) >= max_cells) break;
        CellId ab = eid.at({t[0], t[1]}), bc = eid.at({t[1], t[2]}), ac = eid.at({t[0], t[2]});
        Rat f = std::max({cells[ab].filtration, cells[bc].filtration, cells[ac].filtration}) +
                random_dyadic(rng, 0, 4);
        cells.push_back(Cell{next++, 2, {{bc, 1}, {ac, -1}, {ab, 1}}, f});
    }
    return build_filtered_complex(std::move(cells), field);
}

// Bars containing the closed interval [t, s]: birth <= t and death > s.
inline int bars_containing(const Barcode& bc, const Rat& t, const Rat& s) {
    int n = 0;
    for (const auto& b : bc.bars)
        if (b.birth <= t && (!b.death || *b.death > s)) ++n;
    return n;
}

// Checks compute_barcode against the rank_invariant oracle over all pairs of
// critical values and all degrees.  Returns false on any mismatch.
inline bool barcode_matches_rank_oracle(const FilteredComplex& fc) {
    auto values = fc.critical_values();
    auto all = compute_all_barcodes(fc);
    for (int deg = 0; deg <= fc.max_dim(); ++deg) {
        for (size_t i = 0; i < values.size(); ++i)
            for (size_t j = i; j < values.size(); ++j) {
                int oracle = rank_invariant(fc, deg, values[i], values[j]);
                int from_bars = bars_containing(all[deg], values[i], values[j]);
                if (oracle != from_bars) return false;
            }
    }
    return true;
}

// Exhaustive minimal bottleneck by recursion over partial matchings; the
// infimum convention matches the library (drops allowed at half-length).
inline Rat brute_bottleneck(const Barcode& d1, const Barcode& d2, bool* infinite = nullptr) {
    std::vector<Bar> f1, f2, i1, i2;
    for (const auto& b : d1.bars) (b.finite() ? f1 : i1).push_back(b);
    for (const auto& b : d2.bars) (b.finite() ? f2 : i2).push_back(b);
    if (infinite) *infinite = false;
    if (i1.size() != i2.size()) {
        if (infinite) *infinite = true;
        return Rat(0);
    }
    // Infinite bars: minimize the max birth distance over permutations.
    Rat inf_cost(0);
    std::vector<size_t> perm(i2.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    if (!i1.empty()) {
        Rat best(-1);
        do {
            Rat worst(0);
            for (size_t i = 0; i < i1.size(); ++i)
                worst = std::max(worst, rat_abs(i1[i].birth - i2[perm[i]].birth));
            if (best < 0 || worst < best) best = worst;
        } while (std::next_permutation(perm.begin(), perm.end()));
        inf_cost = best;
    }
    // Finite bars: try all partial injections.
    Rat best(-1);
    std::vector<int> assign(f1.size(), -1);
    std::vector<char> taken(f2.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == f1.size()) {
            Rat worst = inf_cost;
            for (size_t a = 0; a < f1.size(); ++a) {
                if (assign[a] < 0)
                    worst = std::max(worst, (*f1[a].death - f1[a].birth) / 2);
                else
                    worst = std::max(worst,
                                     std::max(rat_abs(f1[a].birth - f2[assign[a]].birth),
                                              rat_abs(*f1[a].death - *f2[assign[a]].death)));
            }
            for (size_t b = 0; b < f2.size(); ++b)
                if (!taken[b]) worst = std::max(worst, (*f2[b].death - f2[b].birth) / 2);
            if (best < 0 || worst < best) best = worst;
            return;
        }
        rec(i + 1);  // leave f1[i] unmatched
        for (size_t b = 0; b < f2.size(); ++b) {
            if (taken[b]) continue;
            taken[b] = 1;
            assign[i] = static_cast<int>(b);
            rec(i + 1);
            assign[i] = -1;
            taken[b] = 0;
        }
    };
    rec(0);
    return best < 0 ? inf_cost : best;
}

inline Barcode random_diagram(Rng& rng, int max_bars, bool allow_infinite = true) {
    Barcode bc;
    std::uniform_int_distribution<int> n_d(0, max_bars);
    int n = n_d(rng);
    for (int i = 0; i < n; ++i) {
        Rat birth = random_dyadic(rng, 0, 12, 2);
        std::uniform_int_distribution<int> kind(0, 4);
        if (allow_infinite && kind(rng) == 0) {
            bc.bars.push_back(Bar{birth, std::nullopt});
        } else {
            Rat len = random_dyadic(rng, 1, 10, 2);
            bc.bars.push_back(Bar{birth, birth + len});
        }
    }
    bc.sort();
    return bc;
}

}  // namespace testsupport
