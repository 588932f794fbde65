#pragma once

#include "lipbar/dga.hpp"

namespace lipbar {

// Minimal model of S^3 v S^3 truncated at degree 7: generators a1, a2 in
// degree 3, b in degree 5, c1, c2 in degree 7 with db = a1 a2, dc_i = b a_i.
// Weights follow the Whitehead-product second grading (3, 3, 6, 9, 9).
inline MinimalDga s3_wedge_s3_model() {
    MinimalDga M;
    M.name = "s3vs3";
    M.generators = {{"a1", 3, 3}, {"a2", 3, 3}, {"b", 5, 6}, {"c1", 7, 9}, {"c2", 7, 9}};
    M.differential.resize(5);
    M.differential[0] = {};
    M.differential[1] = {};
    M.differential[2] = {GcaTerm{{0, 1}, Rat(1)}};   // db = a1 a2
    M.differential[3] = {GcaTerm{{2, 0}, Rat(1)}};   // dc1 = b a1
    M.differential[4] = {GcaTerm{{2, 1}, Rat(1)}};   // dc2 = b a2
    for (auto& p : M.differential) p = detail::gca_normalize(std::move(p), M.generators);
    M.validate();
    return M;
}

// H^*(CP^2 x S^3) = Lambda(x, y)/(x^3) with |x| = 2, |y| = 3.
inline GradedAlgebra cohomology_cp2_s3() {
    return make_quotient_algebra("H*(CP2xS3)", {{"x", 2, 2}, {"y", 3, 1}});
}

// H^*(S^2 x S^2 x (S^3 v S^3)) = Lambda(x1,x2,y1,y2)/(y1 y2, x1^2, x2^2).
inline GradedAlgebra cohomology_s2s2_s3s3() {
    return make_quotient_algebra("H*(S2xS2x(S3vS3))",
                                 {{"x1", 2, 1}, {"x2", 2, 1}, {"y1", 3, 1}, {"y2", 3, 1}},
                                 {{0, 0, 1, 1}});  // y1 y2 = 0
}

// Target with one basis element per DGA generator and all positive-degree
// products zero; lets grading automorphisms be treated as homomorphisms for
// U-dilatation experiments.
inline GradedAlgebra shadow_algebra(const MinimalDga& M) {
    GradedAlgebra alg;
    alg.name = M.name + "-shadow";
    alg.basis.push_back({"1", 0, Rat(1)});
    for (const auto& g : M.generators) alg.basis.push_back({g.name, g.degree, Rat(1)});
    int n = alg.dim();
    alg.mult.assign(n, std::vector<std::vector<std::pair<int, Rat>>>(n));
    for (int i = 0; i < n; ++i) {
        alg.mult[0][i].push_back({i, Rat(1)});
        if (i != 0) alg.mult[i][0].push_back({i, Rat(1)});
    }
    alg.validate();
    return alg;
}

// One algebraic lower-bound scenario: the pair phi_L, psi_L together with
// the explicit homotopy eta_L between them.
template <class K>
struct DgaScenario {
    const MinimalDga* dga;
    const GradedAlgebra* alg;
    DgaHom<K> phi, psi;
    DgaHomotopy<K> eta;
};

namespace detail {

template <class K>
PiecewisePoly<K> tpoly(std::vector<K> coeffs) {
    return PiecewisePoly<K>(Polynomial<K>(std::move(coeffs)));
}

}  // namespace detail

// Example on H^*(CP^2 x S^3):
//   phi_L(a1)=y, phi_L(b)=-L^6 xy;  psi_L(b)=+L^6 xy;
//   eta_L(a1)=y, eta_L(a2)=-2L^6 x dt, eta_L(b)=L^6 xy (2t-1),
//   eta_L(c2)=-2L^12 x^2 y t(1-t).
// With the Koszul convention d(e (x) p) = (-1)^{|e|} e (x) p' dt the
// d-commutation forces the sign of the c2 coefficient; its magnitude
// 2 L^12 t(1-t) is the one the dilatation bounds use.
template <class K>
DgaScenario<K> scenario_eta_L(const MinimalDga& M, const GradedAlgebra& A, const K& L) {
    DgaScenario<K> s{&M, &A, DgaHom<K>(M, A), DgaHom<K>(M, A), DgaHomotopy<K>(M, A)};
    K L6 = kpow(L, 6), L12 = kpow(L, 12);
    int a1 = M.find("a1"), a2 = M.find("a2"), b = M.find("b"), c2 = M.find("c2");
    int y = A.find("y"), x = A.find("x"), xy = A.find("xy"), xxy = A.find("xxy");

    s.phi.images[a1].coords[y] = K(1);
    s.phi.images[b].coords[xy] = K(0) - L6;
    s.psi.images[a1].coords[y] = K(1);
    s.psi.images[b].coords[xy] = L6;

    s.eta.images[a1].coords[y].t_part = detail::tpoly<K>({K(1)});
    s.eta.images[a2].coords[x].dt_part = detail::tpoly<K>({K(0) - K(2) * L6});
    s.eta.images[b].coords[xy].t_part = detail::tpoly<K>({K(0) - L6, K(2) * L6});  // L^6 (2t-1)
    // -2 L^12 t (1-t) = -2L^12 t + 2L^12 t^2
    s.eta.images[c2].coords[xxy].t_part =
        detail::tpoly<K>({K(0), K(0) - K(2) * L12, K(2) * L12});
    return s;
}

// Second example, on H^*(S^2 x S^2 x (S^3 v S^3)):
//   phi_L(a1)=y1-y2, phi_L(b)=L^6(x1y1+x2y2);  psi_L(b)=L^6(x1y2+x2y1);
//   eta_L(a2)=L^6(x1-x2)dt, eta_L(b)=L^6[(x1y1+x2y2)(1-t)+(x1y2+x2y1)t],
//   eta_L(c2)=L^12 x1x2(y1-y2) t(1-t).
template <class K>
DgaScenario<K> scenario_eta_L2(const MinimalDga& M, const GradedAlgebra& A, const K& L) {
    DgaScenario<K> s{&M, &A, DgaHom<K>(M, A), DgaHom<K>(M, A), DgaHomotopy<K>(M, A)};
    K L6 = kpow(L, 6), L12 = kpow(L, 12);
    int a1 = M.find("a1"), a2 = M.find("a2"), b = M.find("b"), c2 = M.find("c2");
    int y1 = A.find("y1"), y2 = A.find("y2"), x1 = A.find("x1"), x2 = A.find("x2");
    int x1y1 = A.find("x1y1"), x1y2 = A.find("x1y2"), x2y1 = A.find("x2y1"),
        x2y2 = A.find("x2y2");
    int x1x2y1 = A.find("x1x2y1"), x1x2y2 = A.find("x1x2y2");

    s.phi.images[a1].coords[y1] = K(1);
    s.phi.images[a1].coords[y2] = K(-1);
    s.phi.images[b].coords[x1y1] = L6;
    s.phi.images[b].coords[x2y2] = L6;
    s.psi.images[a1] = s.phi.images[a1];
    s.psi.images[b].coords[x1y2] = L6;
    s.psi.images[b].coords[x2y1] = L6;

    s.eta.images[a1].coords[y1].t_part = detail::tpoly<K>({K(1)});
    s.eta.images[a1].coords[y2].t_part = detail::tpoly<K>({K(-1)});
    s.eta.images[a2].coords[x1].dt_part = detail::tpoly<K>({L6});
    s.eta.images[a2].coords[x2].dt_part = detail::tpoly<K>({K(0) - L6});
    s.eta.images[b].coords[x1y1].t_part = detail::tpoly<K>({L6, K(0) - L6});  // L^6 (1-t)
    s.eta.images[b].coords[x2y2].t_part = detail::tpoly<K>({L6, K(0) - L6});
    s.eta.images[b].coords[x1y2].t_part = detail::tpoly<K>({K(0), L6});  // L^6 t
    s.eta.images[b].coords[x2y1].t_part = detail::tpoly<K>({K(0), L6});
    // L^12 t(1-t) on x1x2y1, -L^12 t(1-t) on x1x2y2
    s.eta.images[c2].coords[x1x2y1].t_part = detail::tpoly<K>({K(0), L12, K(0) - L12});
    s.eta.images[c2].coords[x1x2y2].t_part =
        detail::tpoly<K>({K(0), K(0) - L12, L12});
    return s;
}

// Grading automorphism rho_t on a weighted DGA, seen through the shadow
// algebra: each weight-w generator maps to t^w times its shadow.
inline DgaHom<Rat> grading_automorphism(const MinimalDga& M, const GradedAlgebra& shadow,
                                        const Rat& t) {
    DgaHom<Rat> rho(M, shadow);
    for (size_t i = 0; i < M.generators.size(); ++i) {
        if (!M.generators[i].weight)
            throw Error(ErrorCode::BadInput, "grading automorphism needs weights");
        int idx = shadow.find(M.generators[i].name);
        rho.images[i].coords[idx] = rat_pow(t, static_cast<unsigned>(*M.generators[i].weight));
    }
    return rho;
}

}  // namespace lipbar
