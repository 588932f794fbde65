#pragma once

#include "lipbar/errors.hpp"
#include "lipbar/piecewise.hpp"
#include "lipbar/polynomial.hpp"
#include "lipbar/root_isolation.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lipbar {

template <class K>
inline K kpow(const K& base, unsigned e) {
    K r(1), b = base;
    while (e) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1u;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Finite-dimensional graded-commutative algebra given by a monomial basis and
// a structure-constant table.  Differential is zero (cohomology algebras);
// norms are per-basis-element positive weights, default 1.

struct GradedAlgebra {
    struct BasisElem {
        std::string name;
        int degree = 0;
        Rat norm_weight = Rat(1);
    };
    std::string name;
    std::vector<BasisElem> basis;  // basis[0] is the unit
    // mult[i][j]: list of (basis index, coefficient)
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> mult;

    int dim() const { return static_cast<int>(basis.size()); }
    int find(const std::string& n) const {
        for (int i = 0; i < dim(); ++i)
            if (basis[i].name == n) return i;
        throw Error(ErrorCode::BasisUnknown, "no basis element '" + n + "' in " + name);
    }

    // Graded commutativity and associativity, exhaustively over the basis.
    void validate() const {
        if (basis.empty() || basis[0].degree != 0)
            throw Error(ErrorCode::BadInput, "algebra needs a degree-0 unit at index 0");
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) {
                auto ab = mult[i][j];
                auto ba = mult[j][i];
                int sign = (basis[i].degree % 2 != 0 && basis[j].degree % 2 != 0) ? -1 : 1;
                std::map<int, Rat> l, r;
                for (auto [k, c] : ab) l[k] += c;
                for (auto [k, c] : ba) r[k] += Rat(sign) * c;
                if (l != r) throw Error(ErrorCode::BadInput, "algebra not graded-commutative");
            }
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                for (int k = 0; k < dim(); ++k) {
                    std::map<int, Rat> l, r;
                    for (auto [m, c] : mult[i][j])
                        for (auto [q, c2] : mult[m][k]) l[q] += c * c2;
                    for (auto [m, c] : mult[j][k])
                        for (auto [q, c2] : mult[i][m]) r[q] += c * c2;
                    for (auto& [q, c] : l)
                        if (c != r[q]) throw Error(ErrorCode::BadInput, "algebra not associative");
                    for (auto& [q, c] : r)
                        if (c != l[q]) throw Error(ErrorCode::BadInput, "algebra not associative");
                }
    }
};

// Builds the quotient of a free graded-commutative algebra on `gens` by
// monomial relations: per-generator exponent caps plus forbidden products.
// Basis elements are the surviving monomials; Koszul signs come from
// reordering odd generators.
struct AlgebraGenerator {
    std::string name;
    int degree;
    int max_exponent;  // odd-degree generators implicitly cap at 1
};

inline GradedAlgebra make_quotient_algebra(const std::string& name,
                                           std::vector<AlgebraGenerator> gens,
                                           std::vector<std::vector<int>> forbidden = {}) {
    const int g = static_cast<int>(gens.size());
    for (auto& gen : gens)
        if (gen.degree % 2 != 0) gen.max_exponent = std::min(gen.max_exponent, 1);

    auto divisible = [&](const std::vector<int>& exp, const std::vector<int>& pat) {
        for (int i = 0; i < g; ++i)
            if (exp[i] < pat[i]) return false;
        return true;
    };
    auto allowed = [&](const std::vector<int>& exp) {
        for (int i = 0; i < g; ++i)
            if (exp[i] > gens[i].max_exponent) return false;
        for (const auto& pat : forbidden)
            if (divisible(exp, pat)) return false;
        return true;
    };

    // Enumerate monomials in generator order.
    std::vector<std::vector<int>> monomials;
    std::vector<int> cur(g, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == g) {
            if (allowed(cur)) monomials.push_back(cur);
            return;
        }
        int cap = gens[i].max_exponent;
        for (int e = 0; e <= cap; ++e) {
            cur[i] = e;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);

    auto degree_of = [&](const std::vector<int>& exp) {
        int d = 0;
        for (int i = 0; i < g; ++i) d += exp[i] * gens[i].degree;
        return d;
    };
    std::sort(monomials.begin(), monomials.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  int da = degree_of(a), db = degree_of(b);
                  if (da != db) return da < db;
                  return a < b;
              });

    auto name_of = [&](const std::vector<int>& exp) {
        std::string s;
        for (int i = 0; i < g; ++i)
            for (int e = 0; e < exp[i]; ++e) s += gens[i].name;
        return s.empty() ? std::string("1") : s;
    };

    GradedAlgebra alg;
    alg.name = name;
    for (const auto& m : monomials) alg.basis.push_back({name_of(m), degree_of(m), Rat(1)});

    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < monomials.size(); ++i) index[monomials[i]] = static_cast<int>(i);

    // Koszul sign for merging two canonical monomials: each odd generator in
    // the right factor hops over the odd generators of the left factor that
    // have larger index.
    auto koszul = [&](const std::vector<int>& a, const std::vector<int>& b) {
        long swaps = 0;
        for (int i = 0; i < g; ++i) {
            if (gens[i].degree % 2 == 0 || b[i] == 0) continue;
            long heavier = 0;
            for (int j = i + 1; j < g; ++j)
                if (gens[j].degree % 2 != 0) heavier += a[j];
            swaps += heavier * b[i];
        }
        return swaps % 2 == 0 ? 1 : -1;
    };

    const int n = static_cast<int>(monomials.size());
    alg.mult.assign(n, std::vector<std::vector<std::pair<int, Rat>>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> exp(g);
            bool zero = false;
            for (int k = 0; k < g; ++k) {
                exp[k] = monomials[i][k] + monomials[j][k];
                if (gens[k].degree % 2 != 0 && exp[k] > 1) zero = true;
            }
            if (zero || !allowed(exp)) continue;
            alg.mult[i][j].push_back({index.at(exp), Rat(koszul(monomials[i], monomials[j]))});
        }
    alg.validate();
    return alg;
}

// ---------------------------------------------------------------------------
// Free graded-commutative monomials in DGA generators (for differentials).

struct GcaTerm {
    std::vector<int> gens;  // sorted generator indices; repeats for even gens
    Rat coeff;
};
using GcaPoly = std::vector<GcaTerm>;

struct DgaGenerator {
    std::string name;
    int degree;
    std::optional<int> weight;
};

// Sullivan-style minimal DGA presentation: free graded-commutative on
// `generators` with a decomposable differential.
struct MinimalDga {
    std::string name;
    std::vector<DgaGenerator> generators;
    std::vector<GcaPoly> differential;  // by generator index

    int find(const std::string& n) const {
        for (size_t i = 0; i < generators.size(); ++i)
            if (generators[i].name == n) return static_cast<int>(i);
        throw Error(ErrorCode::BasisUnknown, "no generator '" + n + "' in " + name);
    }
    int degree_of_term(const GcaTerm& t) const {
        int d = 0;
        for (int gi : t.gens) d += generators[gi].degree;
        return d;
    }
    void validate() const;
};

namespace detail {

// Canonicalizes a generator word: sorts by index, tracking the Koszul sign;
// zero (empty coeff) if an odd generator repeats.
inline std::optional<std::pair<std::vector<int>, int>> canonical_word(
    std::vector<int> word, const std::vector<DgaGenerator>& gens) {
    int sign = 1;
    // insertion sort counting odd-odd transpositions
    for (size_t i = 1; i < word.size(); ++i) {
        for (size_t j = i; j > 0 && word[j] < word[j - 1]; --j) {
            bool odd1 = gens[word[j]].degree % 2 != 0;
            bool odd2 = gens[word[j - 1]].degree % 2 != 0;
            if (odd1 && odd2) sign = -sign;
            std::swap(word[j], word[j - 1]);
        }
    }
    for (size_t i = 0; i + 1 < word.size(); ++i)
        if (word[i] == word[i + 1] && gens[word[i]].degree % 2 != 0) return std::nullopt;
    return std::make_pair(std::move(word), sign);
}

inline void gca_accumulate(GcaPoly& acc, const GcaTerm& t) {
    for (auto& u : acc)
        if (u.gens == t.gens) {
            u.coeff += t.coeff;
            return;
        }
    acc.push_back(t);
}

inline GcaPoly gca_normalize(GcaPoly p, const std::vector<DgaGenerator>& gens) {
    GcaPoly out;
    for (auto& t : p) {
        auto cw = canonical_word(t.gens, gens);
        if (!cw || t.coeff == 0) continue;
        gca_accumulate(out, GcaTerm{cw->first, t.coeff * cw->second});
    }
    GcaPoly trimmed;
    for (auto& t : out)
        if (t.coeff != 0) trimmed.push_back(std::move(t));
    return trimmed;
}

// Graded Leibniz differential of a monomial generator word.
inline GcaPoly gca_d_word(const std::vector<int>& word, const MinimalDga& M) {
    GcaPoly out;
    int sign_prefix = 1;
    for (size_t i = 0; i < word.size(); ++i) {
        const GcaPoly& dgi = M.differential[word[i]];
        for (const auto& term : dgi) {
            std::vector<int> w;
            w.insert(w.end(), word.begin(), word.begin() + static_cast<long>(i));
            w.insert(w.end(), term.gens.begin(), term.gens.end());
            w.insert(w.end(), word.begin() + static_cast<long>(i) + 1, word.end());
            out.push_back(GcaTerm{std::move(w), term.coeff * sign_prefix});
        }
        if (M.generators[word[i]].degree % 2 != 0) sign_prefix = -sign_prefix;
    }
    return gca_normalize(std::move(out), M.generators);
}

inline GcaPoly gca_d(const GcaPoly& p, const MinimalDga& M) {
    GcaPoly out;
    for (const auto& t : p) {
        GcaPoly dw = gca_d_word(t.gens, M);
        for (auto& u : dw) {
            u.coeff *= t.coeff;
            out.push_back(std::move(u));
        }
    }
    return gca_normalize(std::move(out), M.generators);
}

}  // namespace detail

inline void MinimalDga::validate() const {
    for (size_t i = 0; i < generators.size(); ++i) {
        const auto& dv = differential[i];
        for (const auto& t : dv) {
            if (degree_of_term(t) != generators[i].degree + 1)
                throw Error(ErrorCode::BadInput, "differential does not raise degree by 1 at " +
                                                     generators[i].name);
            for (int gi : t.gens)
                if (generators[gi].degree >= generators[i].degree)
                    throw Error(ErrorCode::BadInput,
                                "differential of " + generators[i].name + " is not minimal");
        }
        if (!detail::gca_d(dv, *this).empty())
            throw Error(ErrorCode::BadInput, "dd != 0 at generator " + generators[i].name);
    }
}

// ---------------------------------------------------------------------------
// Elements of the target algebra, homomorphisms, homotopies.

template <class K>
struct Element {
    const GradedAlgebra* alg = nullptr;
    std::vector<K> coords;

    Element() = default;
    explicit Element(const GradedAlgebra& a) : alg(&a), coords(a.basis.size(), K(0)) {}

    bool is_zero() const {
        for (const auto& c : coords)
            if (!(c == K(0))) return false;
        return true;
    }
    // -1 for zero, -2 for inhomogeneous.
    int degree() const {
        int d = -1;
        for (size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] == K(0)) continue;
            int bd = alg->basis[i].degree;
            if (d == -1)
                d = bd;
            else if (d != bd)
                return -2;
        }
        return d;
    }
    friend Element operator+(Element a, const Element& b) {
        for (size_t i = 0; i < a.coords.size(); ++i) a.coords[i] = a.coords[i] + b.coords[i];
        return a;
    }
    friend Element operator-(Element a, const Element& b) {
        for (size_t i = 0; i < a.coords.size(); ++i) a.coords[i] = a.coords[i] - b.coords[i];
        return a;
    }
    friend Element operator*(const Element& a, const Element& b) {
        Element out(*a.alg);
        const auto& mult = a.alg->mult;
        for (size_t i = 0; i < a.coords.size(); ++i) {
            if (a.coords[i] == K(0)) continue;
            for (size_t j = 0; j < b.coords.size(); ++j) {
                if (b.coords[j] == K(0)) continue;
                K prod = a.coords[i] * b.coords[j];
                for (auto [k, c] : mult[i][j]) out.coords[k] = out.coords[k] + K(c) * prod;
            }
        }
        return out;
    }
    friend Element operator*(const K& s, Element a) {
        for (auto& c : a.coords) c = s * c;
        return a;
    }
    friend bool operator==(const Element& a, const Element& b) { return a.coords == b.coords; }

    std::string describe() const {
        std::string s;
        for (size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] == K(0)) continue;
            if (!s.empty()) s += " + ";
            s += "[" + alg->basis[i].name + "]*c";
        }
        return s.empty() ? "0" : s;
    }
};

template <class K>
inline Element<K> unit_element(const GradedAlgebra& a) {
    Element<K> e(a);
    e.coords[0] = K(1);
    return e;
}

// A degree-preserving algebra map from the free DGA into the target, given by
// generator images.
template <class K>
struct DgaHom {
    const MinimalDga* dga = nullptr;
    const GradedAlgebra* alg = nullptr;
    std::vector<Element<K>> images;

    DgaHom() = default;
    DgaHom(const MinimalDga& m, const GradedAlgebra& a)
        : dga(&m), alg(&a), images(m.generators.size(), Element<K>(a)) {}

    Element<K> eval(const GcaPoly& p) const {
        Element<K> acc(*alg);
        for (const auto& t : p) {
            Element<K> prod = unit_element<K>(*alg);
            for (int gi : t.gens) prod = prod * images[static_cast<size_t>(gi)];
            acc = acc + K(t.coeff) * prod;
        }
        return acc;
    }
    friend bool operator==(const DgaHom& a, const DgaHom& b) { return a.images == b.images; }
};

struct CheckResult {
    bool ok = true;
    std::string offending;  // first failing generator, when !ok
    std::string detail;
    explicit operator bool() const { return ok; }
};

// True iff degree-preserving and commuting with differentials (the target
// differential is zero, so phi(dv) must vanish).  On failure reports the
// first offending generator and the residual.
template <class K>
inline CheckResult check_homomorphism(const MinimalDga& M, const GradedAlgebra& A,
                                      const DgaHom<K>& phi) {
    if (phi.images.size() != M.generators.size())
        throw Error(ErrorCode::BadInput, "image count mismatch");
    for (size_t i = 0; i < M.generators.size(); ++i) {
        int d = phi.images[i].degree();
        if (d == -2 || (d >= 0 && d != M.generators[i].degree))
            return {false, M.generators[i].name, "image is not degree-preserving"};
    }
    for (size_t i = 0; i < M.generators.size(); ++i) {
        Element<K> residual = phi.eval(M.differential[i]);
        if (!residual.is_zero())
            return {false, M.generators[i].name,
                    "phi(d v) != d phi(v); residual " + residual.describe()};
    }
    return {};
}

// Element of TargetAlgebra tensor Lambda(t, dt): per basis element a t-part
// polynomial and a dt-part polynomial (piecewise, rational breakpoints).
template <class K>
struct HtpyCoeff {
    PiecewisePoly<K> t_part, dt_part;
    bool is_zero() const { return t_part.is_zero() && dt_part.is_zero(); }
};

template <class K>
struct HtpyElem {
    const GradedAlgebra* alg = nullptr;
    std::vector<HtpyCoeff<K>> coords;

    HtpyElem() = default;
    explicit HtpyElem(const GradedAlgebra& a) : alg(&a), coords(a.basis.size()) {}

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }
    // Degree of nonzero support; dt parts count one higher.
    int degree() const {
        int d = -1;
        for (size_t i = 0; i < coords.size(); ++i) {
            int bd = alg->basis[i].degree;
            if (!coords[i].t_part.is_zero()) {
                if (d == -1) d = bd;
                else if (d != bd) return -2;
            }
            if (!coords[i].dt_part.is_zero()) {
                if (d == -1) d = bd + 1;
                else if (d != bd + 1) return -2;
            }
        }
        return d;
    }

    friend HtpyElem operator+(HtpyElem a, const HtpyElem& b) {
        for (size_t i = 0; i < a.coords.size(); ++i) {
            a.coords[i].t_part = a.coords[i].t_part + b.coords[i].t_part;
            a.coords[i].dt_part = a.coords[i].dt_part + b.coords[i].dt_part;
        }
        return a;
    }
    friend HtpyElem operator-(HtpyElem a, const HtpyElem& b) {
        for (size_t i = 0; i < a.coords.size(); ++i) {
            a.coords[i].t_part = a.coords[i].t_part - b.coords[i].t_part;
            a.coords[i].dt_part = a.coords[i].dt_part - b.coords[i].dt_part;
        }
        return a;
    }
    // Koszul product in B (x) Lambda(t,dt): moving a dt past a basis element
    // of odd degree flips the sign.
    friend HtpyElem operator*(const HtpyElem& a, const HtpyElem& b) {
        HtpyElem out(*a.alg);
        const auto& mult = a.alg->mult;
        for (size_t i = 0; i < a.coords.size(); ++i) {
            const auto& ca = a.coords[i];
            bool a_zero_t = ca.t_part.is_zero(), a_zero_dt = ca.dt_part.is_zero();
            if (a_zero_t && a_zero_dt) continue;
            for (size_t j = 0; j < b.coords.size(); ++j) {
                const auto& cb = b.coords[j];
                if (cb.t_part.is_zero() && cb.dt_part.is_zero()) continue;
                int ej_sign = (a.alg->basis[j].degree % 2 != 0) ? -1 : 1;
                for (auto [k, c] : mult[i][j]) {
                    auto scale = [&](const PiecewisePoly<K>& p) { return K(c) * p; };
                    if (!a_zero_t && !cb.t_part.is_zero())
                        out.coords[k].t_part =
                            out.coords[k].t_part + scale(ca.t_part * cb.t_part);
                    if (!a_zero_t && !cb.dt_part.is_zero())
                        out.coords[k].dt_part =
                            out.coords[k].dt_part + scale(ca.t_part * cb.dt_part);
                    if (!a_zero_dt && !cb.t_part.is_zero()) {
                        PiecewisePoly<K> term = scale(ca.dt_part * cb.t_part);
                        if (ej_sign < 0) term = -term;
                        out.coords[k].dt_part = out.coords[k].dt_part + term;
                    }
                    // dt * dt = 0
                }
            }
        }
        return out;
    }

    // d(e (x) (p + q dt)) = (-1)^{|e|} e (x) p' dt  (target differential 0).
    HtpyElem differential() const {
        HtpyElem out(*alg);
        for (size_t i = 0; i < coords.size(); ++i) {
            PiecewisePoly<K> dp = coords[i].t_part.derivative();
            if (alg->basis[i].degree % 2 != 0) dp = -dp;
            out.coords[i].dt_part = dp;
        }
        return out;
    }

    Element<K> restrict0() const {
        Element<K> e(*alg);
        for (size_t i = 0; i < coords.size(); ++i) e.coords[i] = coords[i].t_part.at0();
        return e;
    }
    Element<K> restrict1() const {
        Element<K> e(*alg);
        for (size_t i = 0; i < coords.size(); ++i) e.coords[i] = coords[i].t_part.at1();
        return e;
    }
    // Signed definite integral: the inverse of the differential convention
    // above, so that integrating d(anything) telescopes correctly.
    Element<K> integral01() const {
        Element<K> e(*alg);
        for (size_t i = 0; i < coords.size(); ++i) {
            K v = integral_01(coords[i].dt_part);
            if (alg->basis[i].degree % 2 != 0) v = K(0) - v;
            e.coords[i] = v;
        }
        return e;
    }
    // Signed indefinite integral from 0: a pure t-part element.
    HtpyElem integral0t() const {
        HtpyElem out(*alg);
        for (size_t i = 0; i < coords.size(); ++i) {
            PiecewisePoly<K> p = integrate_from_zero(coords[i].dt_part);
            if (alg->basis[i].degree % 2 != 0) p = -p;
            out.coords[i].t_part = p;
        }
        return out;
    }
    bool continuous() const {
        for (const auto& c : coords)
            if (!c.t_part.continuous()) return false;
        return true;
    }
    friend bool operator==(const HtpyElem& a, const HtpyElem& b) {
        for (size_t i = 0; i < a.coords.size(); ++i) {
            if (!(a.coords[i].t_part == b.coords[i].t_part)) return false;
            if (!(a.coords[i].dt_part == b.coords[i].dt_part)) return false;
        }
        return true;
    }
};

template <class K>
inline HtpyElem<K> constant_htpy_elem(const Element<K>& e) {
    HtpyElem<K> h(*e.alg);
    for (size_t i = 0; i < e.coords.size(); ++i)
        h.coords[i].t_part = PiecewisePoly<K>(Polynomial<K>(e.coords[i]));
    return h;
}

template <class K>
inline HtpyElem<K> unit_htpy_elem(const GradedAlgebra& a) {
    return constant_htpy_elem(unit_element<K>(a));
}

// A homotopy M -> A (x) Lambda(t, dt), given by generator images.
template <class K>
struct DgaHomotopy {
    const MinimalDga* dga = nullptr;
    const GradedAlgebra* alg = nullptr;
    std::vector<HtpyElem<K>> images;
    std::vector<char> defined;  // partial homotopies: which generators are set

    DgaHomotopy() = default;
    DgaHomotopy(const MinimalDga& m, const GradedAlgebra& a)
        : dga(&m), alg(&a), images(m.generators.size(), HtpyElem<K>(a)),
          defined(m.generators.size(), 1) {}

    HtpyElem<K> eval(const GcaPoly& p) const {
        HtpyElem<K> acc(*alg);
        for (const auto& t : p) {
            HtpyElem<K> prod = unit_htpy_elem<K>(*alg);
            for (int gi : t.gens) prod = prod * images[static_cast<size_t>(gi)];
            PiecewisePoly<K> coeff(Polynomial<K>(K(t.coeff)));
            for (auto& c : prod.coords) {
                c.t_part = K(t.coeff) * c.t_part;
                c.dt_part = K(t.coeff) * c.dt_part;
            }
            acc = acc + prod;
        }
        return acc;
    }
    DgaHom<K> restrict0() const {
        DgaHom<K> h(*dga, *alg);
        for (size_t i = 0; i < images.size(); ++i) h.images[i] = images[i].restrict0();
        return h;
    }
    DgaHom<K> restrict1() const {
        DgaHom<K> h(*dga, *alg);
        for (size_t i = 0; i < images.size(); ++i) h.images[i] = images[i].restrict1();
        return h;
    }
};

// True iff eta is a homotopy with eta|0 = phi and eta|1 = psi: commutes with
// d, degree-preserving, t-parts continuous across breakpoints.
template <class K>
inline CheckResult check_homotopy(const MinimalDga& M, const GradedAlgebra& A,
                                  const DgaHomotopy<K>& eta, const DgaHom<K>& phi,
                                  const DgaHom<K>& psi) {
    for (size_t i = 0; i < M.generators.size(); ++i) {
        const auto& img = eta.images[i];
        int d = img.degree();
        if (d == -2 || (d >= 0 && d != M.generators[i].degree))
            return {false, M.generators[i].name, "homotopy image is not degree-preserving"};
        if (!img.continuous())
            return {false, M.generators[i].name, "discontinuous t-coefficient"};
    }
    for (size_t i = 0; i < M.generators.size(); ++i) {
        if (!(eta.images[i].restrict0() == phi.images[i]))
            return {false, M.generators[i].name, "eta|_0 != phi (EndpointMismatch)"};
        if (!(eta.images[i].restrict1() == psi.images[i]))
            return {false, M.generators[i].name, "eta|_1 != psi (EndpointMismatch)"};
    }
    for (size_t i = 0; i < M.generators.size(); ++i) {
        HtpyElem<K> lhs = eta.images[i].differential();
        HtpyElem<K> rhs = eta.eval(M.differential[i]);
        if (!(lhs == rhs))
            return {false, M.generators[i].name, "d(eta(v)) != eta(dv)"};
    }
    return {};
}

// Obstruction cochain sigma(v) = psi(v) - phi(v) - int_0^1 Phi(dv) for a
// homotopy Phi defined on every generator appearing in dv.
template <class K>
inline Element<K> obstruction_cochain(const MinimalDga& M, const GradedAlgebra& A,
                                      const DgaHomotopy<K>& Phi, int v, const DgaHom<K>& phi,
                                      const DgaHom<K>& psi) {
    for (const auto& t : M.differential[static_cast<size_t>(v)])
        for (int gi : t.gens)
            if (!Phi.defined[static_cast<size_t>(gi)])
                throw Error(ErrorCode::IncompleteHomotopy,
                            "homotopy undefined on generator " + M.generators[gi].name);
    Element<K> integral = Phi.eval(M.differential[static_cast<size_t>(v)]).integral01();
    Element<K> sigma = psi.images[static_cast<size_t>(v)] - phi.images[static_cast<size_t>(v)] - integral;
    (void)A;
    return sigma;
}

// Extension step when the obstruction vanishes:
//   Phi(v) = phi(v) + int_0^t Phi(dv)
// (the primitive term d(c(v) (x) t) vanishes for cohomology targets once
// sigma(v) = 0, since then c(v) can be taken zero).
template <class K>
inline HtpyElem<K> extend_homotopy(const MinimalDga& M, const GradedAlgebra& A,
                                   const DgaHomotopy<K>& Phi, int v, const DgaHom<K>& phi,
                                   const DgaHom<K>& psi) {
    Element<K> sigma = obstruction_cochain(M, A, Phi, v, phi, psi);
    if (!sigma.is_zero())
        throw Error(ErrorCode::IncompleteHomotopy,
                    "obstruction does not vanish at " + M.generators[static_cast<size_t>(v)].name);
    HtpyElem<K> res = constant_htpy_elem(phi.images[static_cast<size_t>(v)]) +
                      Phi.eval(M.differential[static_cast<size_t>(v)]).integral0t();
    return res;
}

// ---------------------------------------------------------------------------
// Dilatations (numeric scalars only).

// Per-degree (or per-weight) operator norms as exact max candidates;
// dil = max over k of norm_k^{1/k}.
struct Dilatation {
    std::vector<std::pair<int, PolyMax>> norms;  // (exponent k, norm candidates)

    double value() const {
        double best = 0;
        for (const auto& [k, n] : norms) {
            double v = n.to_double();
            if (v > 0) best = std::max(best, std::pow(v, 1.0 / k));
        }
        return best;
    }
    // Exact test: dil >= c^(1/r)  <=>  exists k with norm_k^r >= c^k.
    bool at_least_root(const Rat& c, unsigned r) const {
        for (const auto& [k, n] : norms)
            if (n.pow_at_least(r, rat_pow(c, static_cast<unsigned>(k)))) return true;
        return false;
    }
    // Exact test: dil <= c^(1/r).
    bool at_most_root(const Rat& c, unsigned r) const {
        for (const auto& [k, n] : norms)
            if (!n.pow_at_most(r, rat_pow(c, static_cast<unsigned>(k)))) return false;
        return true;
    }
    bool equals_root(const Rat& c, unsigned r) const {
        return at_least_root(c, r) && at_most_root(c, r);
    }
    bool at_least(const Rat& c) const { return at_least_root(c, 1); }
    bool equals(const Rat& c) const { return equals_root(c, 1); }
};

namespace detail {

inline void add_const_candidate(PolyMax& m, const Rat& v) {
    m.candidates.push_back(MaxCandidate{Poly(v), true, Rat(0), {}});
}

}  // namespace detail

// Dil(phi) = max over generator degrees k of ||phi|_{V_k}||^{1/k}, where the
// operator norm is the max weighted coefficient over the monomial basis.
inline Dilatation dilatation(const DgaHom<Rat>& phi) {
    std::map<int, PolyMax> by_degree;
    for (size_t i = 0; i < phi.images.size(); ++i) {
        int k = phi.dga->generators[i].degree;
        auto& pm = by_degree[k];
        detail::add_const_candidate(pm, Rat(0));
        for (size_t b = 0; b < phi.images[i].coords.size(); ++b) {
            Rat v = rat_abs(phi.images[i].coords[b]) * phi.alg->basis[b].norm_weight;
            detail::add_const_candidate(pm, v);
        }
    }
    Dilatation d;
    for (auto& [k, pm] : by_degree) d.norms.push_back({k, std::move(pm)});
    return d;
}

// For homotopies the coefficient magnitudes are sup over t in [0,1] of the
// t- and dt-part coefficients, computed exactly via critical points.
inline Dilatation dilatation(const DgaHomotopy<Rat>& eta) {
    std::map<int, PolyMax> by_degree;
    for (size_t i = 0; i < eta.images.size(); ++i) {
        int k = eta.dga->generators[i].degree;
        auto& pm = by_degree[k];
        detail::add_const_candidate(pm, Rat(0));
        for (size_t b = 0; b < eta.images[i].coords.size(); ++b) {
            const Rat& w = eta.alg->basis[b].norm_weight;
            PolyMax tmax = piecewise_abs_max(eta.images[i].coords[b].t_part);
            PolyMax dtmax = piecewise_abs_max(eta.images[i].coords[b].dt_part);
            for (auto& c : tmax.candidates) {
                c.p = Poly(w) * c.p;
                pm.candidates.push_back(std::move(c));
            }
            for (auto& c : dtmax.candidates) {
                c.p = Poly(w) * c.p;
                pm.candidates.push_back(std::move(c));
            }
        }
    }
    Dilatation d;
    for (auto& [k, pm] : by_degree) d.norms.push_back({k, std::move(pm)});
    return d;
}

// Weight-graded refinement: exponent 1/weight instead of 1/degree.
// Requires every generator to carry a weight.
inline Dilatation u_dilatation(const DgaHom<Rat>& phi) {
    std::map<int, PolyMax> by_weight;
    for (size_t i = 0; i < phi.images.size(); ++i) {
        if (!phi.dga->generators[i].weight)
            throw Error(ErrorCode::BadInput,
                        "generator " + phi.dga->generators[i].name + " carries no weight");
        int w = *phi.dga->generators[i].weight;
        auto& pm = by_weight[w];
        detail::add_const_candidate(pm, Rat(0));
        for (size_t b = 0; b < phi.images[i].coords.size(); ++b) {
            Rat v = rat_abs(phi.images[i].coords[b]) * phi.alg->basis[b].norm_weight;
            detail::add_const_candidate(pm, v);
        }
    }
    Dilatation d;
    for (auto& [w, pm] : by_weight) d.norms.push_back({w, std::move(pm)});
    return d;
}

// Specialization of L-parametric data at a rational L.
inline DgaHom<Rat> specialize(const DgaHom<PolyL>& phi, const Rat& L) {
    DgaHom<Rat> out(*phi.dga, *phi.alg);
    for (size_t i = 0; i < phi.images.size(); ++i)
        for (size_t b = 0; b < phi.images[i].coords.size(); ++b)
            out.images[i].coords[b] = phi.images[i].coords[b](L);
    return out;
}

inline DgaHomotopy<Rat> specialize(const DgaHomotopy<PolyL>& eta, const Rat& L) {
    DgaHomotopy<Rat> out(*eta.dga, *eta.alg);
    auto spec_piecewise = [&](const PiecewisePoly<PolyL>& p) {
        std::vector<Poly> pieces;
        for (const auto& q : p.pieces) {
            std::vector<Rat> coeffs;
            for (const auto& cL : q.coeffs()) coeffs.push_back(cL(L));
            pieces.push_back(Poly(std::move(coeffs)));
        }
        return PiecewisePoly<Rat>(p.breaks, std::move(pieces));
    };
    for (size_t i = 0; i < eta.images.size(); ++i)
        for (size_t b = 0; b < eta.images[i].coords.size(); ++b) {
            out.images[i].coords[b].t_part = spec_piecewise(eta.images[i].coords[b].t_part);
            out.images[i].coords[b].dt_part = spec_piecewise(eta.images[i].coords[b].dt_part);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Exponent bookkeeping (alpha of the formalization lemma).

struct AlphaExponents {
    Rat naive;                                 // product of (n+1)/n over qualifying degrees
    Rat refined;                               // max over generators of exponent/degree
    std::vector<std::pair<int, int>> chain;    // (degree, exponent) per generator degree
};

// naive: product of (n+1)/n over degrees n <= domain_dim in which some
// generator has a nontrivial differential.  refined: per-generator exponent
// e(v) with e(v) = deg v for closed generators and max over monomials of the
// sum of factor exponents otherwise; alpha = max e(v)/deg v.
inline AlphaExponents alpha_exponent(const MinimalDga& M, int domain_dim) {
    AlphaExponents out;
    out.naive = Rat(1);
    std::set<int> qualifying;
    for (size_t i = 0; i < M.generators.size(); ++i)
        if (!M.differential[i].empty() && M.generators[i].degree <= domain_dim)
            qualifying.insert(M.generators[i].degree);
    for (int n : qualifying) out.naive *= Rat(n + 1, n);

    std::vector<int> expo(M.generators.size(), 0);
    // Minimality orders generators so lower-degree exponents are available.
    std::vector<size_t> idx(M.generators.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return M.generators[a].degree < M.generators[b].degree;
    });
    for (size_t i : idx) {
        if (M.differential[i].empty()) {
            expo[i] = M.generators[i].degree;
        } else {
            int best = 0;
            for (const auto& t : M.differential[i]) {
                int s = 0;
                for (int gi : t.gens) s += expo[static_cast<size_t>(gi)];
                best = std::max(best, s);
            }
            expo[i] = best;
        }
    }
    out.refined = Rat(0);
    std::map<int, int> chain;
    for (size_t i = 0; i < M.generators.size(); ++i) {
        int deg = M.generators[i].degree;
        if (deg > domain_dim) continue;
        chain[deg] = std::max(chain[deg], expo[i]);
        Rat ratio(expo[i], deg);
        if (ratio > out.refined) out.refined = ratio;
    }
    for (auto [d, e] : chain) out.chain.push_back({d, e});
    if (out.refined == 0) out.refined = Rat(1);
    return out;
}

}  // namespace lipbar
