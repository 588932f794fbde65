#pragma once

#include "lipbar/dga.hpp"
#include "lipbar/piecewise.hpp"

namespace lipbar {

// Any homotopy between the first example's phi_L and psi_L is forced, on the
// top generator, to the coefficient family L^12 - beta(t)^2/2 where beta is
// the dt-antiderivative appearing in eta(a2), pinned to beta(0) = -L^6,
// beta(1) = L^6.  Since beta crosses zero, the coefficient reaches exactly
// L^12 there, certifying the dilatation lower bound.
struct ForcedC2Certificate {
    PiecewisePoly<Rat> coefficient;  // L^12 - beta^2/2
    PolyMax sup;                     // exact sup_t |coefficient|
    Rat lower_bound;                 // L^12
    bool certified = false;          // sup >= lower_bound, exact arithmetic
    bool root_exact = false;         // witness zero of beta
    Rat root_lo, root_hi;
};

inline ForcedC2Certificate forced_c2_certificate(const Rat& L, const PiecewisePoly<Rat>& beta) {
    Rat L6 = rat_pow(L, 6), L12 = rat_pow(L, 12);
    if (!beta.continuous()) throw Error(ErrorCode::EndpointViolation, "beta is discontinuous");
    if (beta.at0() != -L6 || beta.at1() != L6)
        throw Error(ErrorCode::EndpointViolation,
                    "beta must run from -L^6 to L^6 (got " + rat_str(beta.at0()) + " .. " +
                        rat_str(beta.at1()) + ")");

    ForcedC2Certificate cert;
    cert.lower_bound = L12;
    PiecewisePoly<Rat> half(Poly(Rat(1, 2)));
    cert.coefficient = PiecewisePoly<Rat>(Poly(L12)) - half * beta * beta;
    cert.sup = piecewise_abs_max(cert.coefficient);
    cert.certified = cert.sup.at_least(L12);

    // Witness: the first zero of beta (it exists by the sign change).
    bool found = false;
    for (size_t i = 0; i < beta.pieces.size() && !found; ++i) {
        auto roots = isolate_roots(beta.pieces[i], beta.breaks[i], beta.breaks[i + 1]);
        if (!roots.empty()) {
            auto r = roots.front();
            refine_to_width(r, Rat(1, 1 << 20));
            cert.root_exact = r.exact;
            cert.root_lo = r.exact ? r.value : r.lo;
            cert.root_hi = r.exact ? r.value : r.hi;
            found = true;
        }
    }
    if (!found)
        throw Error(ErrorCode::EndpointViolation, "beta has no zero; endpoints violated");
    return cert;
}

// Second example: admissible reparametrizations beta_1, beta_2 (0 -> 1).
// The forced top coefficient pair has combined magnitude
// |beta_1 (1-beta_2)| + |beta_2 (1-beta_1)|, whose max over t is at least
// 1/6, hence the coefficient sup is at least L^12/6.
struct ForcedTwoVariableCertificate {
    PolyMax sum_max;         // exact max_t (|g1| + |g2|)
    Rat threshold;           // 1/6
    bool certified = false;  // sum_max >= 1/6
    Rat coefficient_bound;   // L^12/6
};

inline ForcedTwoVariableCertificate forced_two_variable_certificate(
    const Rat& L, const PiecewisePoly<Rat>& beta1, const PiecewisePoly<Rat>& beta2) {
    for (const auto* b : {&beta1, &beta2}) {
        if (!b->continuous())
            throw Error(ErrorCode::EndpointViolation, "beta is discontinuous");
        if (b->at0() != 0 || b->at1() != 1)
            throw Error(ErrorCode::EndpointViolation, "beta must run from 0 to 1");
    }
    PiecewisePoly<Rat> one(Poly(Rat(1)));
    PiecewisePoly<Rat> g1 = beta1 * (one - beta2);
    PiecewisePoly<Rat> g2 = beta2 * (one - beta1);

    // |g1| + |g2| = max over the four sign combinations of s1 g1 + s2 g2.
    ForcedTwoVariableCertificate cert;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            PiecewisePoly<Rat> h = (s1 > 0 ? g1 : -g1) + (s2 > 0 ? g2 : -g2);
            cert.sum_max.merge(piecewise_max(h));
        }
    cert.threshold = Rat(1, 6);
    cert.certified = cert.sum_max.at_least(cert.threshold);
    cert.coefficient_bound = rat_pow(L, 12) / 6;
    return cert;
}

}  // namespace lipbar
