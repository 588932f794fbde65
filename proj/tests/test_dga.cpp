#include "lipbar/dga.hpp"

#include "lipbar/dga_models.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace lipbar;

TEST_CASE("quotient algebras validate and multiply correctly") {
    auto A = cohomology_cp2_s3();
    CHECK(A.dim() == 6);
    int x = A.find("x"), y = A.find("y"), xy = A.find("xy"), xx = A.find("xx");
    CHECK(A.basis[x].degree == 2);
    CHECK(A.basis[xy].degree == 5);
    // x*y = xy = y*x (even times odd commutes)
    REQUIRE(A.mult[x][y].size() == 1);
    CHECK(A.mult[x][y][0].first == xy);
    CHECK(A.mult[x][y][0].second == 1);
    REQUIRE(A.mult[y][x].size() == 1);
    CHECK(A.mult[y][x][0].second == 1);
    // x * xx = x^3 = 0
    CHECK(A.mult[x][xx].empty());
    // y * y = 0
    CHECK(A.mult[y][y].empty());

    auto B = cohomology_s2s2_s3s3();
    CHECK(B.dim() == 12);
    int y1 = B.find("y1"), y2 = B.find("y2");
    CHECK(B.mult[y1][y2].empty());  // relation y1 y2 = 0
    int x1 = B.find("x1");
    CHECK(B.mult[x1][x1].empty());  // x1^2 = 0
    // y2 * y1 also zero by graded commutativity with the relation
    CHECK(B.mult[y2][y1].empty());
}

TEST_CASE("minimal model validates") {
    auto M = s3_wedge_s3_model();
    CHECK(M.generators.size() == 5);
    // db = a1 a2 has degree 6 = |b| + 1; handled inside validate()
    SECTION("broken differential is rejected") {
        auto bad = M;
        // dc1 = b a1 + a1 (degree mismatch)
        bad.differential[3].push_back(GcaTerm{{0}, Rat(1)});
        CHECK_THROWS_AS(bad.validate(), Error);
    }
    SECTION("dd != 0 is rejected") {
        MinimalDga bad;
        bad.name = "bad";
        bad.generators = {{"u", 2, {}}, {"v", 3, {}}, {"w", 6, {}}};
        bad.differential.resize(3);
        bad.differential[1] = {GcaTerm{{0, 0}, Rat(1)}};  // dv = u^2
        bad.differential[2] = {GcaTerm{{0, 0, 0}, Rat(0)}, GcaTerm{{1, 1}, Rat(1)}};  // dw = v^2
        // d(v^2) = (dv) v - v (dv) = u^2 v - v u^2 = 0, fine; instead corrupt:
        bad.differential[2] = {GcaTerm{{0, 1}, Rat(1)}};  // dw = u v, degree 5 != 7
        CHECK_THROWS_AS(bad.validate(), Error);
    }
}

TEST_CASE("homomorphism checking") {
    auto M = s3_wedge_s3_model();
    auto A = cohomology_cp2_s3();

    SECTION("zero homomorphism is valid") {
        DgaHom<Rat> zero(M, A);
        CHECK(check_homomorphism(M, A, zero).ok);
    }
    SECTION("phi_L at L = 2") {
        auto s = scenario_eta_L<Rat>(M, A, Rat(2));
        CHECK(check_homomorphism(M, A, s.phi).ok);
        CHECK(check_homomorphism(M, A, s.psi).ok);
        CHECK(s.phi.images[M.find("b")].coords[A.find("xy")] == Rat(-64));
    }
    SECTION("degree corruption is caught") {
        auto s = scenario_eta_L<Rat>(M, A, Rat(2));
        s.phi.images[M.find("a2")].coords[A.find("x")] = Rat(1);  // degree 2 into degree 3 slot
        auto r = check_homomorphism(M, A, s.phi);
        CHECK_FALSE(r.ok);
        CHECK(r.offending == "a2");
    }
    SECTION("differential residual is caught") {
        // Target with two degree-3 generators whose product survives: then
        // phi(db) = phi(a1) phi(a2) can be nonzero while d phi(b) = 0.
        auto E = make_quotient_algebra("Lambda(e,f)", {{"e", 3, 1}, {"f", 3, 1}});
        DgaHom<Rat> phi(M, E);
        phi.images[M.find("a1")].coords[E.find("e")] = Rat(1);
        phi.images[M.find("a2")].coords[E.find("f")] = Rat(1);
        auto r = check_homomorphism(M, E, phi);
        CHECK_FALSE(r.ok);
        CHECK(r.offending == "b");
    }
}

TEST_CASE("the first built-in homotopy verifies, numerically and in L") {
    auto M = s3_wedge_s3_model();
    auto A = cohomology_cp2_s3();
    for (int L : {1, 2, 3}) {
        auto s = scenario_eta_L<Rat>(M, A, Rat(L));
        auto r = check_homotopy(M, A, s.eta, s.phi, s.psi);
        INFO("L = " << L << ": " << r.offending << " " << r.detail);
        CHECK(r.ok);
        CHECK(check_homomorphism(M, A, s.eta.restrict0()).ok);
        CHECK(check_homomorphism(M, A, s.eta.restrict1()).ok);
    }
    // Symbolic L
    auto s = scenario_eta_L<PolyL>(M, A, PolyL::monomial(1));
    auto r = check_homotopy(M, A, s.eta, s.phi, s.psi);
    INFO(r.offending << " " << r.detail);
    CHECK(r.ok);
    // Symbolic/numeric agreement at L in {1,2,3,5}
    for (int L : {1, 2, 3, 5}) {
        auto eta_num = specialize(s.eta, Rat(L));
        auto direct = scenario_eta_L<Rat>(M, A, Rat(L));
        CHECK(check_homotopy(M, A, eta_num, direct.phi, direct.psi).ok);
    }
}

TEST_CASE("the second built-in homotopy verifies") {
    auto M = s3_wedge_s3_model();
    auto B = cohomology_s2s2_s3s3();
    for (int L : {1, 2, 3}) {
        auto s = scenario_eta_L2<Rat>(M, B, Rat(L));
        auto r = check_homotopy(M, B, s.eta, s.phi, s.psi);
        INFO("L = " << L << ": " << r.offending << " " << r.detail);
        CHECK(r.ok);
    }
    auto s = scenario_eta_L2<PolyL>(M, B, PolyL::monomial(1));
    CHECK(check_homotopy(M, B, s.eta, s.phi, s.psi).ok);
}

TEST_CASE("constant homotopy is a homotopy iff endpoints agree") {
    auto M = s3_wedge_s3_model();
    auto A = cohomology_cp2_s3();
    auto s = scenario_eta_L<Rat>(M, A, Rat(2));
    DgaHomotopy<Rat> constant(M, A);
    for (size_t i = 0; i < M.generators.size(); ++i)
        constant.images[i] = constant_htpy_elem(s.phi.images[i]);
    CHECK(check_homotopy(M, A, constant, s.phi, s.phi).ok);
    auto r = check_homotopy(M, A, constant, s.phi, s.psi);
    CHECK_FALSE(r.ok);  // endpoint mismatch at b
    CHECK(r.offending == "b");
}

TEST_CASE("a corrupted homotopy is rejected with a certificate") {
    auto M = s3_wedge_s3_model();
    auto A = cohomology_cp2_s3();
    auto s = scenario_eta_L<Rat>(M, A, Rat(2));
    // Flip the sign of the c2 coefficient: endpoints still match (it vanishes
    // at 0 and 1) but d-commutation fails.
    int c2 = M.find("c2");
    int xxy = A.find("xxy");
    s.eta.images[c2].coords[xxy].t_part = -s.eta.images[c2].coords[xxy].t_part;
    auto r = check_homotopy(M, A, s.eta, s.phi, s.psi);
    CHECK_FALSE(r.ok);
    CHECK(r.offending == "c2");
}

TEST_CASE("dilatation values") {
    auto M = s3_wedge_s3_model();
    auto A = cohomology_cp2_s3();

    SECTION("zero map") {
        DgaHom<Rat> zero(M, A);
        CHECK(dilatation(zero).value() == 0.0);
    }
    SECTION("phi_L: max(1, L^{6/5})") {
        auto s = scenario_eta_L<Rat>(M, A, Rat(2));
        auto d = dilatation(s.phi);
        CHECK(d.equals_root(rat_pow(Rat(2), 6), 5));  // Dil = (2^6)^{1/5}
        CHECK(d.value() == Catch::Approx(std::pow(64.0, 0.2)));
    }
    SECTION("eta_L: at least (L^12/2)^{1/7}") {
        for (int L : {1, 2, 3}) {
            auto s = scenario_eta_L<Rat>(M, A, Rat(L));
            auto d = dilatation(s.eta);
            CHECK(d.at_least_root(rat_pow(Rat(L), 12) / 2, 7));
        }
    }
}

TEST_CASE("u-dilatation") {
    auto M = s3_wedge_s3_model();
    auto A = cohomology_cp2_s3();
    SECTION("zero map") {
        DgaHom<Rat> zero(M, A);
        CHECK(u_dilatation(zero).value() == 0.0);
    }
    SECTION("grading automorphism has u-dilatation t") {
        auto shadow = shadow_algebra(M);
        for (Rat t : {Rat(2), Rat(3), Rat(1, 2)}) {
            auto rho = grading_automorphism(M, shadow, t);
            CHECK(check_homomorphism(M, shadow, rho).ok);
            CHECK(u_dilatation(rho).equals(t));
        }
    }
    SECTION("phi_L has u-dilatation L for L >= 1") {
        for (int L : {1, 2, 5}) {
            auto s = scenario_eta_L<Rat>(M, A, Rat(L));
            CHECK(u_dilatation(s.phi).equals(Rat(L)));
        }
    }
    SECTION("composing with rho_s scales the u-dilatation by s") {
        Rat L(2), scale(3);
        auto s = scenario_eta_L<Rat>(M, A, L);
        auto composed = s.phi;
        for (size_t i = 0; i < M.generators.size(); ++i) {
            Rat f = rat_pow(scale, static_cast<unsigned>(*M.generators[i].weight));
            composed.images[i] = f * composed.images[i];
        }
        CHECK(u_dilatation(composed).equals(L * scale));
    }
}

TEST_CASE("obstruction cochains and extension") {
    auto M = s3_wedge_s3_model();
    auto A = cohomology_cp2_s3();
    auto s = scenario_eta_L<Rat>(M, A, Rat(2));
    int c1 = M.find("c1"), c2 = M.find("c2");

    SECTION("constant homotopy with equal ends has zero obstruction") {
        DgaHomotopy<Rat> constant(M, A);
        for (size_t i = 0; i < M.generators.size(); ++i)
            constant.images[i] = constant_htpy_elem(s.phi.images[i]);
        auto sigma = obstruction_cochain(M, A, constant, c2, s.phi, s.phi);
        CHECK(sigma.is_zero());
    }
    SECTION("eta_L restricted below degree 7 extends over both c's") {
        DgaHomotopy<Rat> partial = s.eta;
        partial.defined.assign(M.generators.size(), 0);
        for (const char* g : {"a1", "a2", "b"}) partial.defined[M.find(g)] = 1;
        auto sigma2 = obstruction_cochain(M, A, partial, c2, s.phi, s.psi);
        CHECK(sigma2.is_zero());
        auto sigma1 = obstruction_cochain(M, A, partial, c1, s.phi, s.psi);
        CHECK(sigma1.is_zero());
        // The extension primitive reproduces the homotopy's own c2 image.
        auto ext = extend_homotopy(M, A, partial, c2, s.phi, s.psi);
        CHECK(ext == s.eta.images[c2]);
    }
    SECTION("missing generators raise IncompleteHomotopy") {
        DgaHomotopy<Rat> partial = s.eta;
        partial.defined.assign(M.generators.size(), 0);
        partial.defined[M.find("a1")] = 1;
        CHECK_THROWS_MATCHES(obstruction_cochain(M, A, partial, c2, s.phi, s.psi), Error,
                             Catch::Matchers::Predicate<Error>([](const Error& e) {
                                 return e.code() == ErrorCode::IncompleteHomotopy;
                             }));
    }
    SECTION("nonvanishing obstruction blocks extension") {
        // Constant homotopy on the a's between phi and psi: sigma(b) =
        // psi(b) - phi(b) = 2 L^6 xy != 0.
        DgaHomotopy<Rat> partial(M, A);
        partial.defined.assign(M.generators.size(), 0);
        for (const char* g : {"a1", "a2"}) {
            partial.images[M.find(g)] = constant_htpy_elem(s.phi.images[M.find(g)]);
            partial.defined[M.find(g)] = 1;
        }
        auto sigma = obstruction_cochain(M, A, partial, M.find("b"), s.phi, s.psi);
        CHECK_FALSE(sigma.is_zero());
        CHECK_THROWS_AS(extend_homotopy(M, A, partial, M.find("b"), s.phi, s.psi), Error);
    }
}

TEST_CASE("alpha exponent bookkeeping") {
    auto M = s3_wedge_s3_model();
    auto a = alpha_exponent(M, 7);
    CHECK(a.naive == Rat(48, 35));
    CHECK(a.refined == Rat(9, 7));
    // The refined chain records the 3 -> 6 -> 9 exponents.
    REQUIRE(a.chain.size() == 3);
    CHECK(a.chain[0] == std::make_pair(3, 3));
    CHECK(a.chain[1] == std::make_pair(5, 6));
    CHECK(a.chain[2] == std::make_pair(7, 9));

    // Truncating the domain dimension below the c's drops the 8/7 factor.
    auto a5 = alpha_exponent(M, 5);
    CHECK(a5.naive == Rat(6, 5));
    CHECK(a5.refined == Rat(6, 5));

    MinimalDga free_dga;
    free_dga.name = "free";
    free_dga.generators = {{"u", 3, {}}, {"v", 5, {}}};
    free_dga.differential.resize(2);
    auto af = alpha_exponent(free_dga, 7);
    CHECK(af.naive == 1);
    CHECK(af.refined == 1);
}
