#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncbl/duality.hpp"
#include "ncbl/random_ensembles.hpp"

using namespace ncbl;

TEST_CASE("entropy as a legendre transform") {
    Rng rng(1);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.75;
    d(1, 1) = 0.25;
    Density rho(HermitianOperator(d), TraceFunctional::trace(2));
    LegendreReport rep = legendre_entropy_check(rho, rng, 50, 800);
    double s = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
    CHECK(rep.entropy == doctest::Approx(s).epsilon(1e-12));
    CHECK(rep.full_rank);
    CHECK(rep.bound_held);
    CHECK(rep.at_closed_form == doctest::Approx(-s).epsilon(1e-11));
    CHECK(rep.attained);
}

TEST_CASE("log partition as the dual supremum") {
    Rng rng(2);
    Matrix z(2, 2);
    z << Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(-1, 0);
    LogPartitionReport rep =
        log_partition_check(HermitianOperator(z), TraceFunctional::trace(2), rng, 50, 200);
    CHECK(rep.log_partition == doctest::Approx(std::log(2.0 * std::cosh(1.0))).epsilon(1e-12));
    CHECK(rep.bound_held);
    CHECK(rep.attained);
    CHECK(rep.maximizer_residual <= 1e-6);
}

TEST_CASE("tensor setting bookkeeping") {
    FactorSystem system({2, 2});
    CoverSpec cover{{IndexSubset({0}), IndexSubset({1})}};
    auto setting = make_tensor_setting(system, cover, {1.0, 1.0});
    CHECK(setting->name() == "tensor");
    CHECK(setting->ambient_dim() == 4);
    CHECK(setting->factors() == 2);
    CHECK(setting->factor_dim(0) == 2);

    Rng rng(3);
    Density rho = setting->random_ambient_density(rng);
    // induced densities are unit trace and consistent with the pairing
    for (int j = 0; j < 2; ++j) {
        Matrix rj = setting->induce(j, rho.mat());
        CHECK(std::abs(rj.trace().real() - 1.0) <= 1e-10);
        HermitianOperator h = setting->random_factor_hermitian(j, rng, 1.0);
        double lhs = std::real((setting->embed_factor(j, h.mat()) * rho.mat()).trace());
        double rhs = std::real((h.mat() * rj).trace());
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }

    // subadditivity of entropy for the singleton cover at p = 1
    double deficit = subadditivity_deficit(*setting, rho);
    CHECK(deficit >= -1e-10);
}

TEST_CASE("clifford setting pairing") {
    auto algebra = std::make_shared<CliffordAlgebra>(3);
    FrameSpec frame = random_tight_frame(3, 4, 17);
    auto setting = make_clifford_setting(algebra, frame);
    CHECK(setting->ambient_dim() == 8);
    CHECK(setting->factors() == 4);

    Rng rng(5);
    Density rho = setting->random_ambient_density(rng);
    for (int j = 0; j < 4; ++j) {
        Matrix rj = setting->induce(j, rho.mat());
        TraceFunctional fn = setting->factor_functional(j);
        CHECK(std::abs(fn(rj) - 1.0) <= 1e-10);
        HermitianOperator h = setting->random_factor_hermitian(j, rng, 1.0);
        double lhs = fn((setting->embed_factor(j, h.mat()) * rho.mat()).eval());
        double rhs = fn((h.mat() * rj).eval());
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("equivalence chains hold link by link") {
    {
        FactorSystem system({2, 2, 2});
        CoverSpec cover{{IndexSubset({0, 1}), IndexSubset({1, 2}), IndexSubset({2, 0})}};
        auto setting = make_tensor_setting(system, cover, {2.0, 2.0, 2.0});
        Rng rng(7);
        VerificationReport rep = verify_duality_equivalence(*setting, rng, 20, 1e-8);
        CHECK(rep.pass);
        CHECK(rep.lhs <= 1e-8);   // worst equality error
        CHECK(rep.rhs >= -1e-8);  // worst inequality link
    }
    {
        auto algebra = std::make_shared<CliffordAlgebra>(2);
        FrameSpec frame = random_tight_frame(2, 3, 23);
        auto setting = make_clifford_setting(algebra, frame);
        Rng rng(9);
        VerificationReport rep = verify_duality_equivalence(*setting, rng, 20, 1e-8);
        CHECK(rep.pass);
    }
}
