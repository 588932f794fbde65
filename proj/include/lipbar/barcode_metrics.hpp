#pragma once

#include "lipbar/persistence.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace lipbar {

// A delta-matching witness.  Index pairs refer to positions in the two bar
// lists.  Validity is checked with the infimum convention: bars strictly
// longer than 2*delta must be matched (a bar of length exactly 2*delta may
// be dropped, since the bottleneck value is an attained infimum).
struct Matching {
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<size_t> unmatched1, unmatched2;
    Rat delta;

    static std::optional<Rat> pair_distance(const Bar& a, const Bar& b) {
        if (a.finite() != b.finite()) return std::nullopt;  // infinite distance
        if (!a.finite()) return rat_abs(a.birth - b.birth);
        return std::max(rat_abs(a.birth - b.birth), rat_abs(*a.death - *b.death));
    }

    bool valid_for(const Barcode& d1, const Barcode& d2) const {
        std::vector<char> m1(d1.bars.size(), 0), m2(d2.bars.size(), 0);
        for (auto [i, j] : pairs) {
            if (i >= d1.bars.size() || j >= d2.bars.size() || m1[i] || m2[j]) return false;
            m1[i] = m2[j] = 1;
            auto dist = pair_distance(d1.bars[i], d2.bars[j]);
            if (!dist || *dist > delta) return false;
        }
        auto check_dropped = [&](const Barcode& d, const std::vector<char>& m) {
            for (size_t i = 0; i < d.bars.size(); ++i) {
                if (m[i]) continue;
                if (!d.bars[i].finite()) return false;
                if (d.bars[i].length() > 2 * delta) return false;
            }
            return true;
        };
        return check_dropped(d1, m1) && check_dropped(d2, m2);
    }
};

struct BottleneckResult {
    bool infinite = false;  // diagrams with different infinite-bar counts
    Rat value;
    Matching matching;
    double to_double() const {
        return infinite ? std::numeric_limits<double>::infinity() : lipbar::to_double(value);
    }
};

namespace detail {

// Kuhn's augmenting-path bipartite matching on an adjacency list.
class BipartiteMatcher {
public:
    explicit BipartiteMatcher(size_t nl, size_t nr) : adj_(nl), match_l_(nl, -1), match_r_(nr, -1) {}
    void add_edge(size_t l, size_t r) { adj_[l].push_back(r); }
    int solve() {
        int matched = 0;
        for (size_t l = 0; l < adj_.size(); ++l) {
            std::vector<char> used(match_r_.size(), 0);
            if (try_augment(l, used)) ++matched;
        }
        return matched;
    }
    int match_of_left(size_t l) const { return match_l_[l]; }

private:
    bool try_augment(size_t l, std::vector<char>& used) {
        for (size_t r : adj_[l]) {
            if (used[r]) continue;
            used[r] = 1;
            if (match_r_[r] < 0 || try_augment(static_cast<size_t>(match_r_[r]), used)) {
                match_l_[l] = static_cast<int>(r);
                match_r_[r] = static_cast<int>(l);
                return true;
            }
        }
        return false;
    }
    std::vector<std::vector<size_t>> adj_;
    std::vector<int> match_l_, match_r_;
};

struct SplitDiagram {
    std::vector<size_t> finite, infinite;  // indices into the barcode
};

inline SplitDiagram split(const Barcode& d) {
    SplitDiagram s;
    for (size_t i = 0; i < d.bars.size(); ++i)
        (d.bars[i].finite() ? s.finite : s.infinite).push_back(i);
    return s;
}

// Tests whether a delta-matching exists; fills the witness on success.
inline bool feasible(const Barcode& d1, const Barcode& d2, const SplitDiagram& s1,
                     const SplitDiagram& s2, const Rat& delta, Matching* out) {
    // Infinite bars must all be matched, by birth distance.
    const size_t ni = s1.infinite.size();
    BipartiteMatcher inf_m(ni, ni);
    for (size_t a = 0; a < ni; ++a)
        for (size_t b = 0; b < ni; ++b)
            if (rat_abs(d1.bars[s1.infinite[a]].birth - d2.bars[s2.infinite[b]].birth) <= delta)
                inf_m.add_edge(a, b);
    if (static_cast<size_t>(inf_m.solve()) != ni) return false;

    // Finite bars: square bipartite graph with diagonal slots.
    const size_t n1 = s1.finite.size(), n2 = s2.finite.size();
    const size_t total = n1 + n2;
    BipartiteMatcher fin_m(total, total);
    auto len = [](const Bar& b) { return *b.death - b.birth; };
    for (size_t a = 0; a < n1; ++a) {
        const Bar& ba = d1.bars[s1.finite[a]];
        for (size_t b = 0; b < n2; ++b) {
            const Bar& bb = d2.bars[s2.finite[b]];
            if (std::max(rat_abs(ba.birth - bb.birth), rat_abs(*ba.death - *bb.death)) <= delta)
                fin_m.add_edge(a, b);
        }
        if (len(ba) <= 2 * delta) fin_m.add_edge(a, n2 + a);  // drop to its diagonal slot
    }
    for (size_t b = 0; b < n2; ++b) {
        const Bar& bb = d2.bars[s2.finite[b]];
        if (len(bb) <= 2 * delta) fin_m.add_edge(n1 + b, b);
        for (size_t a = 0; a < n1; ++a) fin_m.add_edge(n1 + b, n2 + a);  // diagonal-diagonal
    }
    if (static_cast<size_t>(fin_m.solve()) != total) return false;

    if (out) {
        out->pairs.clear();
        out->unmatched1.clear();
        out->unmatched2.clear();
        out->delta = delta;
        for (size_t a = 0; a < ni; ++a)
            out->pairs.emplace_back(s1.infinite[a], s2.infinite[static_cast<size_t>(inf_m.match_of_left(a))]);
        for (size_t a = 0; a < n1; ++a) {
            int r = fin_m.match_of_left(a);
            if (r >= 0 && static_cast<size_t>(r) < n2)
                out->pairs.emplace_back(s1.finite[a], s2.finite[static_cast<size_t>(r)]);
            else
                out->unmatched1.push_back(s1.finite[a]);
        }
        std::vector<char> hit(n2, 0);
        for (auto [i, j] : out->pairs) {
            (void)i;
            for (size_t b = 0; b < n2; ++b)
                if (s2.finite[b] == j) hit[b] = 1;
        }
        for (size_t b = 0; b < n2; ++b)
            if (!hit[b]) out->unmatched2.push_back(s2.finite[b]);
    }
    return true;
}

}  // namespace detail

// Exact bottleneck distance.  The optimum over delta is attained on the
// finite candidate set of endpoint differences and half-lengths, so a binary
// search over that set with a matching feasibility test is exact.
inline BottleneckResult bottleneck_distance(const Barcode& d1, const Barcode& d2) {
    BottleneckResult res;
    auto s1 = detail::split(d1), s2 = detail::split(d2);
    if (s1.infinite.size() != s2.infinite.size()) {
        res.infinite = true;
        return res;
    }
    std::vector<Rat> cand;
    cand.push_back(Rat(0));
    for (size_t a : s1.infinite)
        for (size_t b : s2.infinite) cand.push_back(rat_abs(d1.bars[a].birth - d2.bars[b].birth));
    for (size_t a : s1.finite) {
        const Bar& ba = d1.bars[a];
        cand.push_back((*ba.death - ba.birth) / 2);
        for (size_t b : s2.finite) {
            const Bar& bb = d2.bars[b];
            cand.push_back(rat_abs(ba.birth - bb.birth));
            cand.push_back(rat_abs(*ba.death - *bb.death));
        }
    }
    for (size_t b : s2.finite) cand.push_back((*d2.bars[b].death - d2.bars[b].birth) / 2);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    size_t lo = 0, hi = cand.size() - 1;
    if (!detail::feasible(d1, d2, s1, s2, cand[hi], nullptr))
        throw Error(ErrorCode::BadInput, "bottleneck: no candidate is feasible");
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (detail::feasible(d1, d2, s1, s2, cand[mid], nullptr))
            hi = mid;
        else
            lo = mid + 1;
    }
    res.value = cand[lo];
    detail::feasible(d1, d2, s1, s2, cand[lo], &res.matching);
    return res;
}

// Isometry-theorem alias: for barcodes the interleaving distance equals the
// bottleneck distance.
inline BottleneckResult interleaving_distance(const Barcode& d1, const Barcode& d2) {
    return bottleneck_distance(d1, d2);
}

// Interval-level epsilon-smoothing: (b, d) -> (b+eps, d-eps) when the bar is
// longer than 2*eps, dropped otherwise; infinite deaths stay infinite.
inline Barcode smooth(const Barcode& d, const Rat& eps) {
    if (eps < 0) throw Error(ErrorCode::NegativeEpsilon, "smooth: eps < 0");
    Barcode out;
    out.degree = d.degree;
    for (const auto& b : d.bars) {
        if (!b.finite()) {
            out.bars.push_back(Bar{b.birth + eps, std::nullopt});
        } else if (*b.death - b.birth > 2 * eps) {
            out.bars.push_back(Bar{b.birth + eps, *b.death - eps});
        }
    }
    out.sort();
    return out;
}

}  // namespace lipbar
