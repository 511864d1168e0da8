#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncbl/frames.hpp"
#include "ncbl/random_ensembles.hpp"

using namespace ncbl;

TEST_CASE("psi family") {
    CHECK(psi(0.0) == 0.0);
    double expected = 0.5 * (1.5 * std::log(1.5) + 0.5 * std::log(0.5));
    CHECK(psi(0.5) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(psi(-0.5) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(psi(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(std::isinf(psi(1.5)));

    CHECK(psi_prime(0.3) == doctest::Approx(std::atanh(0.3)).epsilon(1e-14));
    CHECK(psi_star(0.7) == doctest::Approx(std::log(std::cosh(0.7))).epsilon(1e-13));
    // overflow-safe for large arguments: ln cosh y ~ |y| - ln 2
    CHECK(psi_star(500.0) == doctest::Approx(500.0 - std::log(2.0)).epsilon(1e-13));
    CHECK(psi_star(-500.0) == doctest::Approx(500.0 - std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("legendre pairing of psi and ln cosh") {
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        double x = rng.uniform(-0.99, 0.99);
        double y = psi_prime(x);
        CHECK(psi(x) == doctest::Approx(x * y - psi_star(y)).epsilon(1e-10));
    }
}

TEST_CASE("subspaces") {
    RealVector u(3);
    u << 3.0, 0.0, 4.0;
    SubspaceSpec s = SubspaceSpec::span(u);
    CHECK(s.dim() == 1);
    CHECK(s.basis().col(0).norm() == doctest::Approx(1.0).epsilon(1e-14));
    RealMatrix p = s.projection();
    CHECK((p * p - p).norm() <= 1e-12);

    SubspaceSpec full = SubspaceSpec::full(3);
    CHECK((full.projection() - RealMatrix::Identity(3, 3)).norm() <= 1e-14);

    RealMatrix raw(3, 2);
    raw << 1, 1, 0, 1, 0, 0;
    SubspaceSpec g = SubspaceSpec::orthonormalized(3, raw);
    CHECK((g.basis().transpose() * g.basis() - RealMatrix::Identity(2, 2)).norm() <= 1e-12);
    RealMatrix dep(3, 2);
    dep << 1, 2, 0, 0, 0, 0;
    CHECK_THROWS(SubspaceSpec::orthonormalized(3, dep));
}

TEST_CASE("frame condition") {
    RealVector e0(2), e1(2);
    e0 << 1, 0;
    e1 << 0, 1;
    std::vector<std::pair<SubspaceSpec, double>> tight;
    tight.emplace_back(SubspaceSpec::span(e0), 1.0);
    tight.emplace_back(SubspaceSpec::span(e1), 1.0);
    FrameSpec f(2, std::move(tight));
    FrameCondition c = check_frame_condition(f);
    CHECK(c.admissible);
    CHECK(c.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.slack().norm() <= 1e-12);

    std::vector<std::pair<SubspaceSpec, double>> bad;
    bad.emplace_back(SubspaceSpec::full(2), 1.0);
    bad.emplace_back(SubspaceSpec::span(e0), 1.0);
    FrameSpec g(2, std::move(bad));
    FrameCondition cb = check_frame_condition(g);
    CHECK(!cb.admissible);
    CHECK(cb.min_eigenvalue < 0.0);
    CHECK(cb.witness.size() == 2);
}

TEST_CASE("random tight frames are tight") {
    for (int k = 0; k < 5; ++k) {
        int n = 2 + k % 3;
        int N = n + 1 + k;
        FrameSpec f = random_tight_frame(n, N, 100 + static_cast<std::uint64_t>(k));
        CHECK(f.size() == N);
        CHECK(f.slack().norm() <= 1e-9);
        for (int j = 0; j < N; ++j) {
            CHECK(f.subspace(j).dim() == 1);
            CHECK(f.exponent(j) >= 1.0);
        }
    }
}

TEST_CASE("cosh comparison on tight frames") {
    FrameSpec f = random_tight_frame(2, 4, 7);
    Rng rng(13);
    for (int t = 0; t < 500; ++t) {
        RealVector b(4);
        for (int j = 0; j < 4; ++j) b[j] = 4.0 * (2.0 * rng.uniform() - 1.0);
        VerificationReport rep = verify_cosh_inequality(b, f);
        CHECK(rep.pass);
        CHECK(rep.deficit >= -1e-12);
    }
    // zero direction is an equality
    VerificationReport z = verify_cosh_inequality(RealVector::Zero(4), f);
    CHECK(z.deficit == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("cosh comparison demands a tight one-dimensional frame") {
    RealVector e0(2), e1(2);
    e0 << 1, 0;
    e1 << 0, 1;
    std::vector<std::pair<SubspaceSpec, double>> loose;
    loose.emplace_back(SubspaceSpec::span(e0), 3.0);
    loose.emplace_back(SubspaceSpec::span(e1), 3.0);
    FrameSpec f(2, std::move(loose));
    RealVector b = RealVector::Zero(2);
    CHECK_THROWS(verify_cosh_inequality(b, f));
}

TEST_CASE("psi subadditivity and the rational bound") {
    FrameSpec f = random_tight_frame(3, 5, 21);
    Rng rng(31);
    for (int t = 0; t < 500; ++t) {
        RealVector a = rng.uniform(0.0, 0.999) * random_unit_vector(3, rng);
        VerificationReport rep = verify_psi_subadditivity(a, f);
        CHECK(rep.pass);
        CHECK(!rep.condition_violated);
        CHECK(rep.deficit >= -1e-12);
    }
}

TEST_CASE("psi subadditivity flags inadmissible frames") {
    Rng rng(37);
    std::vector<std::pair<SubspaceSpec, double>> parts;
    for (int j = 0; j < 3; ++j) parts.emplace_back(SubspaceSpec::span(random_unit_vector(2, rng)), 1.0);
    FrameSpec f(2, std::move(parts));
    FrameCondition c = check_frame_condition(f);
    REQUIRE(!c.admissible);
    VerificationReport rep = verify_psi_subadditivity(0.3 * c.witness, f);
    CHECK(rep.condition_violated);
    CHECK(rep.deficit < 0.0);
}
