#pragma once

#include "lipbar/rational.hpp"

#include <algorithm>
#include <vector>

namespace lipbar {

inline Rat k_div_int(const Rat& x, int n) { return x / n; }

// Dense univariate polynomial over a commutative ring K.  K must be
// default-constructible to zero, constructible from int, and support
// +, -, *, == and k_div_int (division by integer scalars).  Used with
// K = Rat and, for L-parametric computations, K = Polynomial<Rat>.
template <class K>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(K constant) { c_.push_back(std::move(constant)); trim(); }
    Polynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }
    Polynomial(int constant) : Polynomial(K(constant)) {}

    static Polynomial monomial(size_t deg, K coeff = K(1)) {
        std::vector<K> c(deg + 1, K(0));
        c[deg] = std::move(coeff);
        return Polynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(size_t i) const { return i < c_.size() ? c_[i] : K(0); }
    const K& leading() const { return c_.back(); }

    K operator()(const K& x) const {
        K acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<K> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(static_cast<int>(i));
        return Polynomial(std::move(d));
    }

    // Antiderivative with zero constant term.
    Polynomial antiderivative() const {
        if (c_.empty()) return {};
        std::vector<K> a(c_.size() + 1, K(0));
        for (size_t i = 0; i < c_.size(); ++i) a[i + 1] = k_div_int(c_[i], static_cast<int>(i + 1));
        return Polynomial(std::move(a));
    }

    Polynomial operator-() const {
        std::vector<K> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const K& s, const Polynomial& p) { return Polynomial(s) * p; }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // p(a*x + b): substitution by a linear polynomial, used by Sturm transforms.
    Polynomial compose_linear(const K& a, const K& b) const {
        Polynomial acc;
        Polynomial lin(std::vector<K>{b, a});
        for (size_t i = c_.size(); i-- > 0;) acc = acc * lin + Polynomial(c_[i]);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }
    std::vector<K> c_;  // c_[i] is the coefficient of x^i
};

template <class K>
inline Polynomial<K> k_div_int(const Polynomial<K>& p, int n) {
    std::vector<K> c = p.coeffs();
    for (auto& x : c) x = k_div_int(x, n);
    return Polynomial<K>(std::move(c));
}

using Poly = Polynomial<Rat>;
// Polynomials in the scaling parameter L; a DGA scalar for symbolic checks.
using PolyL = Polynomial<Rat>;

// Euclidean remainder over a field.
inline Poly poly_rem(Poly a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_rem: division by zero polynomial");
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rat q = a.leading() / b.leading();
        size_t shift = static_cast<size_t>(a.degree() - b.degree());
        a -= Poly::monomial(shift, q) * b;
    }
    return a;
}

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_rem(a, b);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    // Make monic for stable comparisons.
    Rat lead = a.leading();
    std::vector<Rat> c = a.coeffs();
    for (auto& x : c) x /= lead;
    return Poly(std::move(c));
}

inline Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 1) return p;
    Poly g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    // p / g by synthetic division.
    Poly q, r = p;
    while (!r.is_zero() && r.degree() >= g.degree()) {
        Rat lc = r.leading() / g.leading();
        size_t shift = static_cast<size_t>(r.degree() - g.degree());
        q += Poly::monomial(shift, lc);
        r -= Poly::monomial(shift, lc) * g;
    }
    return q;
}

inline double poly_eval_double(const Poly& p, double x) {
    double acc = 0;
    const auto& c = p.coeffs();
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + to_double(c[i]);
    return acc;
}

}  // namespace lipbar
