#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hilbertsep/embed.hpp"
#include "test_support.hpp"

using namespace hilbertsep;
using testsupport::random_domain;
using testsupport::random_interior;
using testsupport::unit_square;

namespace {

Vec vdiff(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

}  // namespace

TEST_CASE("log-clearance coordinates and their canonical representative") {
    const Domain dom = unit_square();
    const EmbeddedPoint e = embed_point(dom, {0.25, 0.5});
    REQUIRE(e.phi.size() == 4);
    CHECK(e.phi[0] == std::log(0.25));
    CHECK(e.phi[1] == std::log(0.75));
    CHECK(e.phi[2] == std::log(0.5));
    CHECK(e.phi[3] == std::log(0.5));
    REQUIRE(e.canonical.size() == 3);
    CHECK(e.canonical[0] == e.phi[0] - e.phi[3]);
    CHECK(e.canonical[1] == e.phi[1] - e.phi[3]);
    CHECK(e.canonical[2] == 0.0);
    CHECK_THROWS_AS(embed_point(dom, {1.25, 0.5}), NotInterior);
}

TEST_CASE("variation seminorm of the zero-padded vector") {
    CHECK(norm_sigma({}) == 0.0);
    CHECK(norm_sigma({3.0}) == 1.5);
    CHECK(norm_sigma({-1.0, 2.0}) == 1.5);
    CHECK(norm_sigma({1.0, 1.0}) == 0.5);  // the padded zero sets the minimum
    CHECK(norm_sigma({0.0, 0.0}) == 0.0);
}

TEST_CASE("the seminorm satisfies the norm axioms on padded vectors") {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> entry(-3.0, 3.0), scale_of(-2.5, 2.5);
    for (int trial = 0; trial < 300; ++trial) {
        Vec x(5), y(5);
        for (int i = 0; i < 5; ++i) {
            x[i] = entry(rng);
            y[i] = entry(rng);
        }
        CHECK(norm_sigma(x) >= 0.0);
        const double lambda = scale_of(rng);
        Vec lx = x;
        for (double& v : lx) v *= lambda;
        CHECK(norm_sigma(lx) == doctest::Approx(std::abs(lambda) * norm_sigma(x)).epsilon(1e-12));
        Vec sum(5);
        for (int i = 0; i < 5; ++i) sum[i] = x[i] + y[i];
        CHECK(norm_sigma(sum) <= norm_sigma(x) + norm_sigma(y) + 1e-12);
    }
    CHECK(norm_sigma({0.0, 0.0, 0.0}) == 0.0);
    CHECK(norm_sigma({1e-300, 0.0}) > 0.0);  // vanishes only at the origin
}

TEST_CASE("embedded distance reproduces the domain metric") {
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> dim_of(2, 4), extra_of(0, 3);
    for (int trial = 0; trial < 25; ++trial) {
        const Domain dom = random_domain(rng, dim_of(rng), extra_of(rng));
        for (int pair = 0; pair < 8; ++pair) {
            const Vec p = random_interior(rng, dom), q = random_interior(rng, dom);
            CHECK(std::abs(embedded_distance(dom, p, q) - hilbert_distance(dom, p, q)) <= 1e-9);
        }
    }
}

TEST_CASE("single-point classes admit a perfect contraction") {
    const Domain dom = unit_square();
    const LabeledDataset ds = make_dataset(dom, {{0.5, 0.75}, {0.5, 0.25}}, {1, -1});
    const NnModel model = train_nn(dom, ds);
    CHECK(model.beta_infinite);
    CHECK(std::isinf(model.beta));
    CHECK_FALSE(model.degenerate);
    const Vec cp = embed_point(dom, {0.5, 0.75}).canonical;
    const Vec cm = embed_point(dom, {0.5, 0.25}).canonical;
    for (std::size_t a = 0; a < cp.size(); ++a) {
        CHECK(model.c_plus[a] == doctest::Approx(cp[a]).epsilon(1e-8));
        CHECK(model.c_minus[a] == doctest::Approx(cm[a]).epsilon(1e-8));
    }
}

TEST_CASE("clustered classes yield a finite contraction that replays") {
    const Domain dom = unit_square();
    const LabeledDataset ds = make_dataset(
        dom, {{0.3, 0.68}, {0.42, 0.7}, {0.35, 0.3}, {0.4, 0.28}}, {1, 1, -1, -1});
    const NnModel model = train_nn(dom, ds);
    REQUIRE_FALSE(model.beta_infinite);
    CHECK(model.beta > 1.0);
    CHECK_FALSE(model.degenerate);
    CHECK(model.beta == doctest::Approx(1.0 / model.t_value).epsilon(1e-12));

    std::vector<Vec> embedded;
    for (const InteriorPoint& p : ds.points)
        embedded.push_back(embed_point(dom, p.coords).canonical);
    for (int i = 0; i < ds.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int j = 0; j < ds.size(); ++j)
            if (ds.labels[j] != ds.labels[i])
                nearest = std::min(nearest, norm_sigma(vdiff(embedded[i], embedded[j])));
        const Vec& own = ds.labels[i] == 1 ? model.c_plus : model.c_minus;
        CHECK(norm_sigma(vdiff(embedded[i], own)) <= model.t_value * nearest + 1e-8);
    }
}

TEST_CASE("adding a training point never improves the contraction") {
    const Domain dom = unit_square();
    const LabeledDataset base = make_dataset(
        dom, {{0.3, 0.68}, {0.42, 0.7}, {0.35, 0.3}, {0.4, 0.28}}, {1, 1, -1, -1});
    const LabeledDataset grown = make_dataset(
        dom, {{0.3, 0.68}, {0.42, 0.7}, {0.8, 0.85}, {0.35, 0.3}, {0.4, 0.28}},
        {1, 1, 1, -1, -1});
    const NnModel before = train_nn(dom, base);
    const NnModel after = train_nn(dom, grown);
    REQUIRE_FALSE(before.beta_infinite);
    REQUIRE_FALSE(after.beta_infinite);
    CHECK(after.beta <= before.beta + 1e-9);
}

TEST_CASE("coincident cross-class pairs force the class-mean fallback") {
    const Domain dom = unit_square();
    const LabeledDataset ds = make_dataset(
        dom, {{0.3, 0.4}, {0.3, 0.4}, {0.7, 0.6}, {0.7, 0.6}}, {1, -1, 1, -1});
    const NnModel model = train_nn(dom, ds);
    CHECK(model.degenerate);
    CHECK_FALSE(model.beta_infinite);
    CHECK(model.beta == 0.0);
    const Vec a = embed_point(dom, {0.3, 0.4}).canonical;
    const Vec b = embed_point(dom, {0.7, 0.6}).canonical;
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(model.c_plus[k] == doctest::Approx(0.5 * (a[k] + b[k])).epsilon(1e-12));
        CHECK(model.c_minus[k] == doctest::Approx(0.5 * (a[k] + b[k])).epsilon(1e-12));
    }
}

TEST_CASE("training requires both classes") {
    const Domain dom = unit_square();
    LabeledDataset lonely;
    lonely.points.push_back(clearance_vector(dom, {0.5, 0.5}));
    lonely.labels.push_back(1);
    lonely.pos_idx.push_back(0);
    CHECK_THROWS_AS(train_nn(dom, lonely), EmptyClass);
}

TEST_CASE("classification compares center distances with a tie band") {
    const Domain dom = unit_square();
    const LabeledDataset ds = make_dataset(dom, {{0.5, 0.75}, {0.5, 0.25}}, {1, -1});
    const NnModel model = train_nn(dom, ds);
    CHECK(classify_nn(model, dom, {0.5, 0.8}).label == 1);
    CHECK(classify_nn(model, dom, {0.5, 0.2}).label == -1);

    NnModel tied = model;
    tied.c_minus = tied.c_plus;
    const NnPrediction pred = classify_nn(tied, dom, {0.4, 0.6});
    CHECK(pred.label == 1);
    CHECK(pred.tie);

    NnModel wrong_size = model;
    wrong_size.c_plus.pop_back();
    CHECK_THROWS_AS(classify_nn(wrong_size, dom, {0.5, 0.5}), DimensionMismatch);
}
