#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncbl/random_ensembles.hpp"
#include "ncbl/search.hpp"

using namespace ncbl;

TEST_CASE("coordinate search minimizes a convex quadratic deterministically") {
    auto f = [](const RealVector& x) { return (x - RealVector::Constant(3, 1.0)).squaredNorm(); };
    SearchConfig cfg;
    cfg.seed = 7;
    cfg.budget = 120;
    SearchResult a = minimize_deficit(f, 3, cfg);
    SearchResult b = minimize_deficit(f, 3, cfg);
    CHECK(a.best_deficit <= 1e-10);
    CHECK((a.best_params - RealVector::Constant(3, 1.0)).norm() <= 1e-4);
    // bit-for-bit reproducible given (seed, budget)
    CHECK(a.best_deficit == b.best_deficit);
    CHECK((a.best_params - b.best_params).norm() == 0.0);
    CHECK(a.trace == b.trace);
}

TEST_CASE("scaling ratio formula") {
    CoverSpec cover{{IndexSubset({0}), IndexSubset({1})}};
    ScalingReport rep = scaling_counterexample(2.0, cover, {2, 2});
    CHECK(rep.ratio == doctest::Approx(2.0).epsilon(1e-14));  // 2^{1/2} * 2^{1/2}
    REQUIRE(rep.schedule.size() == 4);
    CHECK(rep.schedule[0].ratio == doctest::Approx(2.0));
    CHECK(rep.schedule[1].dims == std::vector<Eigen::Index>{4, 4});
    for (std::size_t k = 1; k < rep.schedule.size(); ++k)
        CHECK(rep.schedule[k].ratio > rep.schedule[k - 1].ratio);

    // q <= p admits no counterexample
    CHECK_THROWS(scaling_counterexample(1.0, cover, {2, 2}));

    // q = p exactly would give ratio 1; just check the formula at q close to p from above
    CoverSpec pair{{IndexSubset({0, 1}), IndexSubset({0, 1})}};
    ScalingReport r2 = scaling_counterexample(3.0, pair, {2, 3});
    CHECK(r2.ratio == doctest::Approx(std::pow(6.0, 1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("no violation on an admissible tensor setting") {
    FactorSystem system({2, 2});
    CoverSpec cover{{IndexSubset({0}), IndexSubset({1})}};
    SearchConfig cfg;
    cfg.seed = 11;
    cfg.budget = 60;
    cfg.restarts = 4;
    SearchResult res = search_tensor(system, cover, 1.0, cfg);
    CHECK(!res.violation_found);
    CHECK(res.best_deficit >= -1e-9);
}

TEST_CASE("violation found past the admissible region") {
    CliffordAlgebra alg(2);
    Rng rng(13);
    std::vector<std::pair<SubspaceSpec, double>> parts;
    for (int j = 0; j < 3; ++j) parts.emplace_back(SubspaceSpec::span(random_unit_vector(2, rng)), 1.0);
    FrameSpec frame(2, std::move(parts));
    SearchConfig cfg;
    cfg.seed = 17;
    cfg.budget = 50;
    cfg.restarts = 2;
    SearchResult res = search_clifford(alg, frame, cfg);
    CHECK(res.violation_found);
    CHECK(res.best_deficit < -1e-7);

    SearchResult g = search_gaussian(frame, cfg);
    CHECK(g.violation_found);
    CHECK(g.best_deficit < -1e-7);
}

TEST_CASE("tightness probe certifies the constant") {
    FrameSpec frame = random_tight_frame(2, 4, 31);
    RealMatrix slack = frame.slack();
    auto deficit = [&](const RealVector& b) { return 0.5 * b.dot(slack * b); };
    SearchConfig cfg;
    cfg.seed = 19;
    cfg.budget = 40;
    VerificationReport rep = tightness_probe("gaussian", deficit, 2, cfg);
    CHECK(rep.pass);
    CHECK(rep.lhs == 0.0);
}
