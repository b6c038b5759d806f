#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "rfis/partition.hpp"

using namespace rfis;
using rfis_test::paper;

namespace {

Partition quadrants() {
    return make_partition(4, 4,
                          {{{1, 1}, {1, 2}, {2, 1}, {2, 2}},
                           {{1, 3}, {1, 4}, {2, 3}, {2, 4}},
                           {{3, 1}, {3, 2}, {4, 1}, {4, 2}},
                           {{3, 3}, {3, 4}, {4, 3}, {4, 4}}});
}

}  // namespace

TEST_CASE("partitions must tile the cell grid exactly") {
    CHECK_THROWS_AS(make_partition(2, 2, {{{1, 1}, {1, 2}, {2, 1}}}), Error);  // missing cell
    CHECK_THROWS_AS(make_partition(2, 2, {{{1, 1}, {1, 2}}, {{1, 2}, {2, 1}, {2, 2}}}),
                    Error);  // duplicate
    CHECK_THROWS_AS(make_partition(2, 2, {{{1, 1}, {1, 2}, {2, 1}, {2, 2}}, {}}), Error);  // empty
    CHECK_THROWS_AS(make_partition(2, 2, {{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}}}),
                    Error);  // out of range
}

TEST_CASE("lambda sets of the example partition") {
    const Scenario sc = paper(true);
    CHECK(lambda_cells(sc.partition, 1) == std::vector<Cell>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
    // Domains [0,1/2] x [0,1/2] (j in {3,4}) lie in B_1; [0,1/2] x [1/2,1]
    // (j in {1,2}) lie in B_2; nothing lies in B_3.
    const auto lp1 = lambda_prime_cells(sc.partition, sc.maps, 1);
    const auto lp2 = lambda_prime_cells(sc.partition, sc.maps, 2);
    CHECK(lp1.size() == 8);
    CHECK(lp2.size() == 8);
    for (const Cell& c : lp1) CHECK((c.j == 3 || c.j == 4));
    for (const Cell& c : lp2) CHECK((c.j == 1 || c.j == 2));
    CHECK(lambda_prime_cells(sc.partition, sc.maps, 3).empty());
}

TEST_CASE("the example partition is compatible with the stated intersections") {
    const Scenario sc = paper(true);
    const CompatibilityReport report = check_compatible(sc.partition, sc.maps);
    CHECK(report.compatible);
    CHECK(report.violations.empty());
    CHECK(report.nonempty_intersections ==
          std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {3, 1}, {3, 2}});
}

TEST_CASE("the single-part partition is compatible exactly when K = N") {
    // K = N = 2: every domain is the whole square, one part works.
    const Scenario whole = rfis_test::n2_scenario(Matrix(3, 3, 0.0), Matrix(3, 3, 0.25));
    CHECK(check_compatible(whole.partition, whole.maps).compatible);

    // The example grid (K = 2, N = 4): one part fails condition (2), since
    // the domains tile only [0,1/2] x [0,1], not the square.
    const Scenario sc = paper(true);
    std::vector<Cell> all;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) all.push_back({i, j});
    const CompatibilityReport report = check_compatible(make_partition(4, 4, {all}), sc.maps);
    CHECK_FALSE(report.compatible);
    CHECK(!report.violations.empty());
    CHECK(report.violations.front().find("condition (2)") != std::string::npos);
}

TEST_CASE("a y-split partition of the example grid fails condition (2)") {
    const Scenario sc = paper(true);
    std::vector<Cell> lower, upper;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) (j <= 2 ? lower : upper).push_back({i, j});
    const CompatibilityReport report =
        check_compatible(make_partition(4, 4, {lower, upper}), sc.maps);
    CHECK_FALSE(report.compatible);
}

TEST_CASE("the quadrant partition of the example grid is compatible") {
    // Enumerating the domains against the quadrants: cells with j in {1,2}
    // map into quadrant [0,1/2] x [1/2,1] and cells with j in {3,4} into
    // [0,1/2] x [0,1/2]; every quadrant is tiled exactly.
    const Scenario sc = paper(true);
    const CompatibilityReport report = check_compatible(quadrants(), sc.maps);
    CHECK(report.compatible);
    CHECK(report.nonempty_intersections ==
          std::vector<std::pair<int, int>>{{1, 2}, {2, 1}, {3, 2}, {4, 1}});
}

TEST_CASE("steadiness of the example factors, zeros, and a checkerboard") {
    CHECK(check_steady(paper(true).rfis.scaling).steady);
    CHECK(check_steady(paper(false).rfis.scaling).steady);
    CHECK(check_steady(ScalingFactors{Matrix(5, 5, 0.0)}).steady);

    Matrix checker(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) checker(i, j) = ((i + j) % 2 ? -0.5 : 0.5);
    const SteadyReport report = check_steady(ScalingFactors{checker});
    CHECK_FALSE(report.steady);
    CHECK(report.offending.size() == 16);
}

TEST_CASE("uniform sums of the corrected factors match the expected transfer values") {
    const Scenario sc = paper(true);
    const TransferMatrix G = compute_uniform_sums(sc.rfis, sc.partition);
    REQUIRE(G.m == 3);
    CHECK(G.gamma(0, 1) == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(G.gamma(1, 0) == doctest::Approx(2.8).epsilon(1e-12));
    CHECK(G.gamma(2, 0) == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(G.gamma(2, 1) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(G.gamma(0, 0) == 0.0);
    CHECK(G.gamma(1, 1) == 0.0);
    CHECK(G.gamma(2, 2) == 0.0);
    CHECK(G.gamma(0, 2) == 0.0);
    CHECK(G.gamma(1, 2) == 0.0);

    // Cross-check every corner sum against the float-geometry oracle.
    const auto oracle = rfis_test::corner_sums_oracle(sc.data, sc.maps, sc.rfis.scaling.s,
                                                      sc.partition, 2);
    for (const auto& [pair, entries] : oracle) {
        for (const auto& entry : entries)
            CHECK(std::abs(entry.sum - G.gamma(pair.first - 1, pair.second - 1)) <= 1e-12);
    }
}

TEST_CASE("the printed example factors violate uniform sums at (1,2)") {
    const Scenario sc = paper(false);
    try {
        compute_uniform_sums(sc.rfis, sc.partition);
        CHECK(false);
    } catch (const UniformSumError& e) {
        CHECK(e.r == 1);
        CHECK(e.t == 2);
        CHECK(e.alpha == 0);
        CHECK(e.beta == 2);
        CHECK(e.corner_x == 1);
        CHECK(e.corner_y == 0);
        CHECK(e.value == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(e.expected == doctest::Approx(1.8).epsilon(1e-12));
    }

    // The oracle agrees: the (1,0) corner of the (1,2) domain stands alone.
    const auto oracle =
        rfis_test::corner_sums_oracle(sc.data, sc.maps, sc.rfis.scaling.s, sc.partition, 2);
    const auto& entries = oracle.at({1, 2});
    int mismatches = 0;
    for (const auto& e : entries)
        if (std::abs(e.sum - entries.front().sum) > 1e-9) {
            ++mismatches;
            CHECK(e.cx == 1);
            CHECK(e.cy == 0);
            CHECK(e.sum == doctest::Approx(2.0));
        }
    CHECK(mismatches == 1);
}

TEST_CASE("uniform sums require a homogeneous grid") {
    Matrix z(3, 3, 0.0);
    const InterpolationData data = build_data({0, 0.3, 1}, {0, 0.5, 1}, z);
    const AddressMaps maps = build_address_maps(data, {0, 2, 0}, {0, 2, 0});
    const BilinearRfis rfis = make_rfis(data, maps, make_scaling(Matrix(3, 3, 0.25)));
    const Partition whole = make_partition(2, 2, {{{1, 1}, {1, 2}, {2, 1}, {2, 2}}});
    try {
        compute_uniform_sums(rfis, whole);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HomogeneityRequired);
    }
}

TEST_CASE("zero factors have vanishing uniform sums") {
    const Scenario sc = rfis_test::zero_scaling_paper();
    const TransferMatrix G = compute_uniform_sums(sc.rfis, sc.partition);
    for (double v : G.gamma.data()) CHECK(v == 0.0);
}

TEST_CASE("interior uniformity holds for steady factors") {
    const Scenario sc = paper(true);
    const TransferMatrix G = compute_uniform_sums(sc.rfis, sc.partition);
    const InteriorUniformityReport report =
        verify_interior_uniformity(sc.rfis, sc.partition, G, 9);
    CHECK(report.max_deviation <= 1e-12);
    CHECK(!report.entries.empty());
}

TEST_CASE("constant factors under the whole-square partition sum to K^2 s") {
    const Scenario sc = rfis_test::n2_scenario(Matrix(3, 3, 0.0), Matrix(3, 3, 0.5));
    const TransferMatrix G = compute_uniform_sums(sc.rfis, sc.partition);
    REQUIRE(G.m == 1);
    CHECK(G.gamma(0, 0) == doctest::Approx(2.0).epsilon(1e-15));  // K^2 * 0.5
    const InteriorUniformityReport report =
        verify_interior_uniformity(sc.rfis, sc.partition, G, 7);
    CHECK(report.max_deviation <= 1e-12);
}

TEST_CASE("non-steady factors pass corner sums but fail interior uniformity") {
    Matrix checker(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) checker(i, j) = ((i + j) % 2 ? -0.5 : 0.5);
    const Scenario sc = rfis_test::n2_scenario(Matrix(3, 3, 0.0), checker);
    CHECK_FALSE(check_steady(sc.rfis.scaling).steady);
    // All corner magnitudes are 0.5, so the corner sums agree...
    const TransferMatrix G = compute_uniform_sums(sc.rfis, sc.partition);
    CHECK(G.gamma(0, 0) == doctest::Approx(2.0));
    // ...but |S| is no longer bilinear, so the interior sums drift.
    const InteriorUniformityReport report =
        verify_interior_uniformity(sc.rfis, sc.partition, G, 9);
    CHECK(report.max_deviation > 0.01);
}
