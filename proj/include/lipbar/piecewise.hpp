#pragma once

#include "lipbar/polynomial.hpp"
#include "lipbar/root_isolation.hpp"

#include <algorithm>
#include <vector>

namespace lipbar {

// Piecewise polynomial on [0,1] with rational breakpoints.  Pieces are
// closed-open except the last; values are read from the piece polynomials.
// K follows the same ring requirements as Polynomial.
template <class K>
struct PiecewisePoly {
    std::vector<Rat> breaks;               // 0 = b0 < b1 < ... < bm = 1
    std::vector<Polynomial<K>> pieces;     // size m >= 1

    PiecewisePoly() : breaks{Rat(0), Rat(1)}, pieces{Polynomial<K>()} {}
    explicit PiecewisePoly(Polynomial<K> p) : breaks{Rat(0), Rat(1)}, pieces{std::move(p)} {}
    PiecewisePoly(std::vector<Rat> br, std::vector<Polynomial<K>> ps)
        : breaks(std::move(br)), pieces(std::move(ps)) {
        if (breaks.size() != pieces.size() + 1 || breaks.front() != 0 || breaks.back() != 1)
            throw std::invalid_argument("piecewise: bad breakpoints");
        for (size_t i = 0; i + 1 < breaks.size(); ++i)
            if (breaks[i] >= breaks[i + 1]) throw std::invalid_argument("piecewise: unsorted breaks");
    }

    bool is_zero() const {
        for (const auto& p : pieces)
            if (!p.is_zero()) return false;
        return true;
    }

    size_t piece_index(const Rat& t) const {
        for (size_t i = 0; i + 1 < breaks.size(); ++i)
            if (t < breaks[i + 1]) return i;
        return pieces.size() - 1;
    }
    K operator()(const K& t, const Rat& t_rat) const { return pieces[piece_index(t_rat)](t); }
    K at0() const { return pieces.front()(K(0)); }
    K at1() const { return pieces.back()(K(1)); }

    PiecewisePoly derivative() const {
        PiecewisePoly out = *this;
        for (auto& p : out.pieces) p = p.derivative();
        return out;
    }

    // True when adjacent pieces agree at interior breakpoints.  Breakpoint
    // values are rational; for K != Rat the polynomials are evaluated at the
    // breakpoint embedded in K, which requires K construction from Rat.
    bool continuous() const;

    friend PiecewisePoly refine_like(const PiecewisePoly& p, const std::vector<Rat>& grid) {
        PiecewisePoly out;
        out.breaks = grid;
        out.pieces.clear();
        for (size_t i = 0; i + 1 < grid.size(); ++i) out.pieces.push_back(p.pieces[p.piece_index(grid[i])]);
        return out;
    }

    friend std::vector<Rat> common_grid(const PiecewisePoly& a, const PiecewisePoly& b) {
        std::vector<Rat> g = a.breaks;
        g.insert(g.end(), b.breaks.begin(), b.breaks.end());
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        return g;
    }

    friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
        auto g = common_grid(a, b);
        PiecewisePoly ra = refine_like(a, g), rb = refine_like(b, g);
        for (size_t i = 0; i < ra.pieces.size(); ++i) ra.pieces[i] += rb.pieces[i];
        return ra;
    }
    friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) {
        auto g = common_grid(a, b);
        PiecewisePoly ra = refine_like(a, g), rb = refine_like(b, g);
        for (size_t i = 0; i < ra.pieces.size(); ++i) ra.pieces[i] -= rb.pieces[i];
        return ra;
    }
    friend PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b) {
        auto g = common_grid(a, b);
        PiecewisePoly ra = refine_like(a, g), rb = refine_like(b, g);
        for (size_t i = 0; i < ra.pieces.size(); ++i) ra.pieces[i] *= rb.pieces[i];
        return ra;
    }
    PiecewisePoly operator-() const {
        PiecewisePoly out = *this;
        for (auto& p : out.pieces) p = -p;
        return out;
    }
    friend PiecewisePoly operator*(const K& s, const PiecewisePoly& p) {
        PiecewisePoly out = p;
        for (auto& q : out.pieces) q = Polynomial<K>(s) * q;
        return out;
    }

    // Pointwise equality as functions on [0,1].
    friend bool operator==(const PiecewisePoly& a, const PiecewisePoly& b) {
        auto g = common_grid(a, b);
        PiecewisePoly ra = refine_like(a, g), rb = refine_like(b, g);
        for (size_t i = 0; i < ra.pieces.size(); ++i)
            if (!(ra.pieces[i] == rb.pieces[i])) return false;
        return true;
    }
};

template <>
inline bool PiecewisePoly<Rat>::continuous() const {
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
        const Rat& t = breaks[i + 1];
        if (pieces[i](t) != pieces[i + 1](t)) return false;
    }
    return true;
}

// For K = Polynomial<Rat> (L-parametric coefficients): evaluate both pieces
// at the rational breakpoint, compare as polynomials in L.
template <>
inline bool PiecewisePoly<Polynomial<Rat>>::continuous() const {
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
        Polynomial<Rat> t(breaks[i + 1]);
        if (!(pieces[i](t) == pieces[i + 1](t))) return false;
    }
    return true;
}

// Indefinite integral from 0 with continuous accumulation across pieces.
template <class K>
inline PiecewisePoly<K> integrate_from_zero(const PiecewisePoly<K>& f) {
    PiecewisePoly<K> out = f;
    K acc(0);
    for (size_t i = 0; i < f.pieces.size(); ++i) {
        Polynomial<K> anti = f.pieces[i].antiderivative();
        K at_left = anti(K(f.breaks[i]));
        out.pieces[i] = anti + Polynomial<K>(acc - at_left);
        acc = out.pieces[i](K(f.breaks[i + 1]));
    }
    return out;
}

template <class K>
inline K integral_01(const PiecewisePoly<K>& f) {
    K total(0);
    for (size_t i = 0; i < f.pieces.size(); ++i) {
        Polynomial<K> anti = f.pieces[i].antiderivative();
        total = total + anti(K(f.breaks[i + 1])) - anti(K(f.breaks[i]));
    }
    return total;
}

// Exact sup of |f| over [0,1] as a finite candidate set (Rat pieces only).
inline PolyMax piecewise_abs_max(const PiecewisePoly<Rat>& f) {
    PolyMax m;
    for (size_t i = 0; i < f.pieces.size(); ++i)
        m.merge(poly_abs_max_on(f.pieces[i], f.breaks[i], f.breaks[i + 1]));
    return m;
}

// Exact sup of f (no absolute value).
inline PolyMax piecewise_max(const PiecewisePoly<Rat>& f) {
    PolyMax m;
    for (size_t i = 0; i < f.pieces.size(); ++i)
        m.merge(poly_max_on(f.pieces[i], f.breaks[i], f.breaks[i + 1]));
    return m;
}

}  // namespace lipbar
