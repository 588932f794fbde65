// Verifies the built-in homotopy between the two degree-5 homomorphisms on
// the S^3 v S^3 minimal model and prints its dilatation growth in L,
// together with the formalization exponents.

#include "lipbar/dga_models.hpp"

#include <iostream>

using namespace lipbar;

int main() {
    auto M = s3_wedge_s3_model();
    auto A = cohomology_cp2_s3();

    std::cout << "L   valid   Dil(eta_L)   (L^12/2)^(1/7)\n";
    for (int L = 1; L <= 4; ++L) {
        auto s = scenario_eta_L<Rat>(M, A, Rat(L));
        bool ok = check_homotopy(M, A, s.eta, s.phi, s.psi).ok;
        auto d = dilatation(s.eta);
        double bound = std::pow(std::pow(static_cast<double>(L), 12) / 2.0, 1.0 / 7);
        std::cout << L << "   " << (ok ? "yes" : "NO") << "      " << d.value() << "      "
                  << bound << "\n";
    }

    auto a = alpha_exponent(M, 7);
    std::cout << "formalization exponents: naive " << rat_str(a.naive) << ", refined "
              << rat_str(a.refined) << "\n";
    return 0;
}
