#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "hilbertsep/oracle.hpp"
#include "test_support.hpp"

using namespace hilbertsep;
using testsupport::unit_square;

TEST_CASE("certified point-to-line distance matches the closed form") {
    const Domain dom = unit_square();
    const Hyperplane midline{{0.0, 1.0}, -0.5};  // y = 1/2
    // From (1/2, 3/4) the nearest section point is (1/2, 1/2), at distance
    // (ln 3) / 2 under the symmetric metric.
    const double d =
        oracle::point_hyperplane_distance(dom, midline, {0.5, 0.75}, 1e-7);
    CHECK(d <= 0.5 * std::log(3.0));
    CHECK(d >= 0.5 * std::log(3.0) - 2e-6);
}

TEST_CASE("the one-sided distance grows toward farther lines") {
    const Domain dom = unit_square();
    const Vec p{0.5, 0.9};
    const double near_line = oracle::point_hyperplane_distance(
        dom, Hyperplane{{0.0, 1.0}, -0.6}, p, 1e-7, MetricKind::Funk);
    const double far_line = oracle::point_hyperplane_distance(
        dom, Hyperplane{{0.0, 1.0}, -0.2}, p, 1e-7, MetricKind::Funk);
    CHECK(near_line < far_line);
    CHECK(near_line > 0.0);
}

TEST_CASE("point-to-line distance rejects degenerate queries") {
    const Domain dom = unit_square();
    const Hyperplane midline{{0.0, 1.0}, -0.5};
    CHECK_THROWS_AS(oracle::point_hyperplane_distance(dom, midline, {0.3, 0.5}, 1e-7),
                    PointOnHyperplane);
    CHECK_THROWS_AS(oracle::point_hyperplane_distance(dom, Hyperplane{{0.0, 1.0}, -2.0},
                                                      {0.5, 0.5}, 1e-7),
                    HyperplaneMissesDomain);
    CHECK_THROWS_AS(oracle::point_hyperplane_distance(dom, midline, {0.5, 0.75}, 0.0), Error);
    CHECK_THROWS_AS(oracle::point_hyperplane_distance(dom, Hyperplane{{0.0, 0.0}, 1.0},
                                                      {0.5, 0.75}, 1e-7),
                    MalformedHyperplane);
    CHECK_THROWS_AS(oracle::point_hyperplane_distance(dom, Hyperplane{{1.0}, -0.5}, {0.5, 0.75},
                                                      1e-7),
                    DimensionMismatch);
}

TEST_CASE("the dense scan brackets the known optimum of the mirror pair") {
    const Domain dom = unit_square();
    const LabeledDataset ds = make_dataset(dom, {{0.5, 0.75}, {0.5, 0.25}}, {1, -1});
    const oracle::MarginScan scan = oracle::brute_force_margin_2d(dom, ds, 90, 120);
    const double optimum = 0.5 * std::log(3.0);
    CHECK(scan.margin <= optimum + 1e-9);
    CHECK(scan.margin >= optimum - scan.resolution_estimate);
    CHECK(scan.lines_checked > 0);
    // The winner runs nearly horizontally: the normal aligns with the y axis.
    const double ny = std::abs(scan.w[1]) / norm(scan.w);
    CHECK(ny > 0.99);
}

TEST_CASE("the dense scan reports inseparable data") {
    std::mt19937_64 rng(606);
    const Domain dom = unit_square();
    const auto inst = testsupport::separable_instance(rng, dom);
    const LabeledDataset ds = make_dataset(dom, inst.points, testsupport::flipped_labels(inst));
    CHECK_THROWS_AS(oracle::brute_force_margin_2d(dom, ds, 30, 40), NotSeparable);
}

TEST_CASE("the dense scan is planar only") {
    std::mt19937_64 rng(11);
    const Domain dom = testsupport::random_domain(rng, 3, 0);
    const Vec a = testsupport::random_interior(rng, dom, 0.2);
    const Vec b = testsupport::random_interior(rng, dom, 0.2);
    const LabeledDataset ds = make_dataset(dom, {a, b}, {1, -1});
    CHECK_THROWS_AS(oracle::brute_force_margin_2d(dom, ds, 10, 10), DimensionNot2);
}

TEST_CASE("sampled membership never contradicts the ball polytope") {
    const Domain dom = unit_square();
    SUBCASE("symmetric ball") {
        const auto report =
            oracle::ball_membership_oracle(dom, {0.45, 0.55}, 0.4, 2000, MetricKind::Hilbert, 7);
        CHECK(report.samples == 2000);
        CHECK(report.violations == 0);
        CHECK(report.worst_gap == 0.0);
    }
    SUBCASE("one-sided ball") {
        const auto report =
            oracle::ball_membership_oracle(dom, {0.45, 0.55}, 0.4, 2000, MetricKind::Funk, 7);
        CHECK(report.violations == 0);
    }
    SUBCASE("degenerate radius") {
        const auto report =
            oracle::ball_membership_oracle(dom, {0.45, 0.55}, 0.0, 500, MetricKind::Hilbert, 3);
        CHECK(report.violations == 0);
        CHECK_THROWS_AS(
            oracle::ball_membership_oracle(dom, {0.45, 0.55}, -0.1, 10, MetricKind::Funk, 1),
            NegativeRadius);
    }
}
