#pragma once

#include "lipbar/polynomial.hpp"

#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace lipbar {

// Exact real-root isolation for rational polynomials via Sturm sequences,
// plus sign evaluation of one polynomial at an isolated root of another.
// Degrees in this project stay small (< 40), so plain rational arithmetic
// in the remainder sequence is fine.

inline std::vector<Poly> sturm_sequence(const Poly& sf) {
    std::vector<Poly> seq;
    if (sf.is_zero()) return seq;
    seq.push_back(sf);
    Poly b = sf.derivative();
    while (!b.is_zero()) {
        seq.push_back(b);
        Poly r = -poly_rem(seq[seq.size() - 2], b);
        b = std::move(r);
    }
    return seq;
}

inline int sign_of(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline int sturm_variations(const std::vector<Poly>& seq, const Rat& x) {
    int var = 0, prev = 0;
    for (const auto& q : seq) {
        int s = sign_of(q(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Number of distinct real roots of the (squarefree) sequence head in (a, b].
inline int count_roots(const std::vector<Poly>& seq, const Rat& a, const Rat& b) {
    if (seq.empty() || a >= b) return 0;
    return sturm_variations(seq, a) - sturm_variations(seq, b);
}

// An isolated real root of a squarefree polynomial: either an exact rational
// value, or an open interval (lo, hi) containing exactly one root with
// sf(lo) != 0 and sf(hi) != 0.
struct IsolatedRoot {
    Poly sf;
    bool exact = false;
    Rat value;   // when exact
    Rat lo, hi;  // when not
};

namespace detail {

// Both endpoints are non-roots here.
inline void isolate_open(const Poly& sf, const std::vector<Poly>& seq, const Rat& lo,
                         const Rat& hi, std::vector<IsolatedRoot>& out) {
    int n = count_roots(seq, lo, hi);
    if (n == 0) return;
    if (n == 1) {
        out.push_back(IsolatedRoot{sf, false, Rat(0), lo, hi});
        return;
    }
    Rat mid = (lo + hi) / 2;
    if (sign_of(sf(mid)) != 0) {
        isolate_open(sf, seq, lo, mid, out);
        isolate_open(sf, seq, mid, hi, out);
        return;
    }
    out.push_back(IsolatedRoot{sf, true, mid, mid, mid});
    // Split away from the rational root at mid.
    Rat step = (hi - lo) / 4;
    Rat m1 = mid - step;
    while (sign_of(sf(m1)) == 0 || count_roots(seq, m1, mid) != 1) {
        step /= 2;
        m1 = mid - step;
    }
    step = (hi - lo) / 4;
    Rat m2 = mid + step;
    while (sign_of(sf(m2)) == 0 || count_roots(seq, mid, m2) != 0) {
        step /= 2;
        m2 = mid + step;
    }
    isolate_open(sf, seq, lo, m1, out);
    isolate_open(sf, seq, m2, hi, out);
}

}  // namespace detail

// All distinct real roots of p in [lo, hi], in increasing order.
inline std::vector<IsolatedRoot> isolate_roots(const Poly& p, const Rat& lo, const Rat& hi) {
    std::vector<IsolatedRoot> out;
    if (p.is_zero() || lo > hi) return out;
    Poly sf = squarefree_part(p);
    if (sf.degree() <= 0) return out;
    auto seq = sturm_sequence(sf);
    Rat l = lo, h = hi;
    if (sign_of(sf(l)) == 0) {
        out.push_back(IsolatedRoot{sf, true, l, l, l});
        Rat step = (h > l ? (h - l) / 2 : Rat(1));
        Rat cand = l + step;
        while (sign_of(sf(cand)) == 0 || count_roots(seq, l, cand) != 0) {
            step /= 2;
            cand = l + step;
        }
        l = cand;
    }
    if (h > lo && sign_of(sf(h)) == 0) {
        out.push_back(IsolatedRoot{sf, true, h, h, h});
        Rat step = (h - l) / 2;
        Rat cand = h - step;
        while (sign_of(sf(cand)) == 0 || count_roots(seq, cand, h) != 1) {
            step /= 2;
            cand = h - step;
        }
        h = cand;
    }
    if (l < h) detail::isolate_open(sf, seq, l, h, out);
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) {
        Rat ka = a.exact ? a.value : (a.lo + a.hi) / 2;
        Rat kb = b.exact ? b.value : (b.lo + b.hi) / 2;
        return ka < kb;
    });
    return out;
}

// Halve the enclosure of a non-exact root, possibly discovering it rational.
inline void refine_once(IsolatedRoot& r) {
    if (r.exact) return;
    Rat mid = (r.lo + r.hi) / 2;
    int sm = sign_of(r.sf(mid));
    if (sm == 0) {
        r.exact = true;
        r.value = mid;
        return;
    }
    if (sm == sign_of(r.sf(r.lo)))
        r.lo = mid;
    else
        r.hi = mid;
}

inline void refine_to_width(IsolatedRoot& r, const Rat& width) {
    while (!r.exact && r.hi - r.lo > width) refine_once(r);
}

inline double root_to_double(IsolatedRoot r) {
    refine_to_width(r, Rat(1, Int(1) << 60));
    return r.exact ? to_double(r.value) : to_double((r.lo + r.hi) / 2);
}

// Sign of q at an isolated root xi of r.sf.  Exact: either xi is a common
// root (detected via gcd), or the enclosure is refined until q has no root
// inside it and the sign is read off at the midpoint.
inline int sign_at_root(const Poly& q, IsolatedRoot r) {
    if (q.is_zero()) return 0;
    if (r.exact) return sign_of(q(r.value));
    Poly g = poly_gcd(r.sf, q);
    if (g.degree() >= 1) {
        auto gseq = sturm_sequence(squarefree_part(g));
        if (count_roots(gseq, r.lo, r.hi) > 0) return 0;  // the shared root is xi
    }
    auto qsf = squarefree_part(q);
    auto seq_q = sturm_sequence(qsf);
    while (count_roots(seq_q, r.lo, r.hi) > 0 || sign_of(qsf(r.lo)) == 0) {
        refine_once(r);
        if (r.exact) return sign_of(q(r.value));
    }
    return sign_of(q((r.lo + r.hi) / 2));
}

// ---------------------------------------------------------------------------
// Exact extrema of polynomials on intervals.
//
// The maximum of p on [a, b] is attained at an endpoint or at a root of p'.
// We keep the finite candidate list so that comparisons against rational
// thresholds stay exact even when the maximizer is irrational.

struct MaxCandidate {
    Poly p;  // polynomial being evaluated
    bool at_rational = true;
    Rat point;          // when at_rational
    IsolatedRoot root;  // when not: candidate value is p(root)
};

struct PolyMax {
    std::vector<MaxCandidate> candidates;

    bool at_least(const Rat& c) const {
        for (const auto& cand : candidates) {
            if (cand.at_rational) {
                if (cand.p(cand.point) >= c) return true;
            } else if (sign_at_root(cand.p - Poly(c), cand.root) >= 0) {
                return true;
            }
        }
        return false;
    }
    bool at_most(const Rat& c) const {
        for (const auto& cand : candidates) {
            if (cand.at_rational) {
                if (cand.p(cand.point) > c) return false;
            } else if (sign_at_root(cand.p - Poly(c), cand.root) > 0) {
                return false;
            }
        }
        return true;
    }
    bool equals(const Rat& c) const { return at_least(c) && at_most(c); }

    // max^r >= rhs for nonnegative-valued maxima (candidate sets built via
    // poly_abs_max_on always contain the realizing nonnegative candidate).
    bool pow_at_least(unsigned r, const Rat& rhs) const {
        for (const auto& cand : candidates) {
            if (cand.at_rational) {
                Rat v = cand.p(cand.point);
                if (v >= 0 && rat_pow(v, r) >= rhs) return true;
            } else {
                if (sign_at_root(cand.p, cand.root) < 0) continue;
                Poly pr = kpow_poly(cand.p, r);
                if (sign_at_root(pr - Poly(rhs), cand.root) >= 0) return true;
            }
        }
        return false;
    }
    bool pow_at_most(unsigned r, const Rat& rhs) const {
        for (const auto& cand : candidates) {
            if (cand.at_rational) {
                Rat v = cand.p(cand.point);
                if (v > 0 && rat_pow(v, r) > rhs) return false;
            } else {
                if (sign_at_root(cand.p, cand.root) <= 0) continue;
                Poly pr = kpow_poly(cand.p, r);
                if (sign_at_root(pr - Poly(rhs), cand.root) > 0) return false;
            }
        }
        return true;
    }

    static Poly kpow_poly(const Poly& p, unsigned r) {
        Poly acc(Rat(1));
        for (unsigned i = 0; i < r; ++i) acc *= p;
        return acc;
    }

    double to_double() const {
        if (candidates.empty()) return 0.0;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& cand : candidates) {
            double v = cand.at_rational ? lipbar::to_double(cand.p(cand.point))
                                        : poly_eval_double(cand.p, root_to_double(cand.root));
            best = std::max(best, v);
        }
        return best;
    }
    void merge(const PolyMax& o) {
        candidates.insert(candidates.end(), o.candidates.begin(), o.candidates.end());
    }
};

// Candidates for max of p over [a, b] (endpoints + interior critical points).
inline PolyMax poly_max_on(const Poly& p, const Rat& a, const Rat& b) {
    PolyMax m;
    m.candidates.push_back(MaxCandidate{p, true, a, {}});
    if (b != a) m.candidates.push_back(MaxCandidate{p, true, b, {}});
    for (auto& r : isolate_roots(p.derivative(), a, b)) {
        if (r.exact)
            m.candidates.push_back(MaxCandidate{p, true, r.value, {}});
        else
            m.candidates.push_back(MaxCandidate{p, false, Rat(0), r});
    }
    return m;
}

// Candidates for max of |p| over [a, b].
inline PolyMax poly_abs_max_on(const Poly& p, const Rat& a, const Rat& b) {
    PolyMax m = poly_max_on(p, a, b);
    m.merge(poly_max_on(-p, a, b));
    return m;
}

}  // namespace lipbar
