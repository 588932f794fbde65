#include "lipbar/persistence.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace lipbar;
using namespace testsupport;

static Cell vcell(CellId id, Rat f) { return Cell{id, 0, {}, std::move(f)}; }

TEST_CASE("building validates complexes") {
    SECTION("single vertex") {
        auto fc = build_filtered_complex({vcell(0, Rat(0))});
        CHECK(fc.cells.size() == 1);
    }
    SECTION("edge with endpoints") {
        auto fc = build_filtered_complex(
            {vcell(0, Rat(0)), vcell(1, Rat(0)), Cell{2, 1, {{0, 1}, {1, 1}}, Rat(1)}});
        CHECK(fc.cells.size() == 3);
    }
    SECTION("face entering after coface is rejected") {
        CHECK_THROWS_MATCHES(
            build_filtered_complex(
                {vcell(0, Rat(0)), vcell(1, Rat(1)), Cell{2, 1, {{0, 1}, {1, 1}}, Rat(0)}}),
            Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                return e.code() == ErrorCode::FiltrationOrderViolation;
            }));
    }
    SECTION("unknown face is rejected") {
        CHECK_THROWS_MATCHES(
            build_filtered_complex({vcell(0, Rat(0)), Cell{1, 1, {{0, 1}, {7, 1}}, Rat(1)}}),
            Error, Catch::Matchers::Predicate<Error>(
                       [](const Error& e) { return e.code() == ErrorCode::MissingFace; }));
    }
    SECTION("dd != 0 is rejected") {
        // a 2-cell whose boundary is a single edge
        CHECK_THROWS_MATCHES(
            build_filtered_complex({vcell(0, Rat(0)), vcell(1, Rat(0)),
                                    Cell{2, 1, {{0, 1}, {1, 1}}, Rat(0)},
                                    Cell{3, 2, {{2, 1}}, Rat(1)}}),
            Error, Catch::Matchers::Predicate<Error>(
                       [](const Error& e) { return e.code() == ErrorCode::NotAComplex; }));
    }
}

TEST_CASE("one vertex lives forever") {
    auto fc = build_filtered_complex({vcell(0, Rat(0))});
    auto bc = compute_barcode(fc, 0);
    REQUIRE(bc.bars.size() == 1);
    CHECK(bc.bars[0].birth == 0);
    CHECK_FALSE(bc.bars[0].finite());
}

TEST_CASE("two minima and a saddle: born and then merge") {
    auto fc = build_filtered_complex(
        {vcell(0, Rat(1)), vcell(1, Rat(2)), Cell{2, 1, {{0, 1}, {1, 1}}, Rat(3)}});
    auto bc = compute_barcode(fc, 0);
    REQUIRE(bc.bars.size() == 2);
    CHECK(bc.bars[0].birth == 1);
    CHECK_FALSE(bc.bars[0].finite());
    CHECK(bc.bars[1].birth == 2);
    CHECK(*bc.bars[1].death == 3);
    // rank of the induced map H_0(A_2) -> H_0(A_3)
    CHECK(rank_invariant(fc, 0, Rat(2), Rat(3)) == 1);
    CHECK(rank_invariant(fc, 0, Rat(2), Rat(2)) == 2);
    CHECK_THROWS_AS(rank_invariant(fc, 0, Rat(3), Rat(2)), Error);
}

TEST_CASE("filtered circle") {
    std::vector<Cell> cells;
    for (CellId v = 0; v < 3; ++v) cells.push_back(vcell(v, Rat(0)));
    cells.push_back(Cell{3, 1, {{0, -1}, {1, 1}}, Rat(1)});
    cells.push_back(Cell{4, 1, {{1, -1}, {2, 1}}, Rat(1)});
    cells.push_back(Cell{5, 1, {{0, -1}, {2, 1}}, Rat(1)});
    auto fc = build_filtered_complex(std::move(cells));

    auto ph0 = compute_barcode(fc, 0);
    REQUIRE(ph0.bars.size() == 3);
    CHECK(ph0.infinite_count() == 1);
    int finite_at_1 = 0;
    for (const auto& b : ph0.bars)
        if (b.finite()) {
            CHECK(b.birth == 0);
            CHECK(*b.death == 1);
            ++finite_at_1;
        }
    CHECK(finite_at_1 == 2);

    auto ph1 = compute_barcode(fc, 1);
    REQUIRE(ph1.bars.size() == 1);
    CHECK(ph1.bars[0].birth == 1);
    CHECK_FALSE(ph1.bars[0].finite());

    CHECK(rank_invariant(fc, 1, Rat(0), Rat(1)) == 0);
    CHECK(rank_invariant(fc, 1, Rat(1), Rat(1)) == 1);
}

TEST_CASE("zero-length pairs are discarded") {
    auto fc = build_filtered_complex(
        {vcell(0, Rat(0)), vcell(1, Rat(0)), Cell{2, 1, {{0, 1}, {1, 1}}, Rat(0)}});
    auto bc = compute_barcode(fc, 0);
    REQUIRE(bc.bars.size() == 1);  // the ephemeral (0,0) pair is gone
    CHECK_FALSE(bc.bars[0].finite());
}

TEST_CASE("barcode agrees with the rank-invariant oracle on random complexes") {
    Rng rng(20240811);
    for (int trial = 0; trial < 60; ++trial) {
        auto fc = random_complex(rng, 12);
        INFO("trial " << trial << " with " << fc.cells.size() << " cells");
        CHECK(barcode_matches_rank_oracle(fc));
    }
}

TEST_CASE("euler characteristic consistency") {
    Rng rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        auto fc = random_complex(rng, 12);
        auto all = compute_all_barcodes(fc);
        for (const Rat& t : fc.critical_values()) {
            long long chi = 0;
            for (const auto& bc : all) {
                long long alive = static_cast<long long>(bc.alive_at(t));
                chi += (bc.degree % 2 == 0) ? alive : -alive;
            }
            CHECK(chi == fc.euler_characteristic_at(t));
        }
    }
}

TEST_CASE("determinism: identical reruns") {
    Rng rng(5);
    auto fc = random_complex(rng, 12);
    auto a = compute_all_barcodes(fc);
    auto b = compute_all_barcodes(fc);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("torsion: projective plane over F2, F3 and Q") {
    // Minimal 6-vertex triangulation of RP^2; integral H1 = Z/2, so the
    // barcode genuinely depends on the coefficient field.
    const int faces[10][3] = {{0, 1, 2}, {0, 2, 3}, {0, 1, 5}, {0, 3, 4}, {0, 4, 5},
                              {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}};
    auto build = [&](int field) {
        std::vector<Cell> cells;
        CellId next = 0;
        for (int v = 0; v < 6; ++v) cells.push_back(vcell(next++, Rat(0)));
        std::map<std::pair<int, int>, CellId> eid;
        for (const auto& f : faces)
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    auto key = std::minmax(f[i], f[j]);
                    if (!eid.count(key)) {
                        eid[key] = next;
                        cells.push_back(Cell{next++, 1,
                                             {{static_cast<CellId>(key.first), -1},
                                              {static_cast<CellId>(key.second), 1}},
                                             Rat(0)});
                    }
                }
        REQUIRE(eid.size() == 15);
        for (const auto& f : faces) {
            int a = f[0], b = f[1], c = f[2];
            cells.push_back(Cell{next++, 2,
                                 {{eid.at(std::minmax(b, c)), 1},
                                  {eid.at(std::minmax(a, c)), -1},
                                  {eid.at(std::minmax(a, b)), 1}},
                                 Rat(0)});
        }
        return build_filtered_complex(std::move(cells), field);
    };
    auto f2 = compute_all_barcodes(build(2));
    CHECK(f2[1].infinite_count() == 1);
    CHECK(f2[2].infinite_count() == 1);
    auto f3 = compute_all_barcodes(build(3));
    CHECK(f3[1].infinite_count() == 0);
    CHECK(f3[2].infinite_count() == 0);
    auto fq = compute_all_barcodes(build(0));  // rational coefficients
    CHECK(fq[1].infinite_count() == 0);
    CHECK(fq[2].infinite_count() == 0);
    CHECK(fq[0].infinite_count() == 1);
    // The rank oracle agrees over Q as well.
    CHECK(rank_invariant(build(0), 1, Rat(0), Rat(0)) == 0);
    CHECK(rank_invariant(build(2), 1, Rat(0), Rat(0)) == 1);
}

TEST_CASE("odd prime coefficients accepted") {
    std::vector<Cell> cells;
    for (CellId v = 0; v < 3; ++v) cells.push_back(vcell(v, Rat(0)));
    cells.push_back(Cell{3, 1, {{0, -1}, {1, 1}}, Rat(1)});
    cells.push_back(Cell{4, 1, {{1, -1}, {2, 1}}, Rat(1)});
    cells.push_back(Cell{5, 1, {{0, -1}, {2, 1}}, Rat(1)});
    auto fc = build_filtered_complex(std::move(cells), 3);
    auto ph1 = compute_barcode(fc, 1);
    CHECK(ph1.bars.size() == 1);
    CHECK_THROWS_AS(build_filtered_complex({vcell(0, Rat(0))}, 4), Error);
}
