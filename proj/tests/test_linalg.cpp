#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncbl/linalg.hpp"
#include "ncbl/random_ensembles.hpp"
#include "ncbl/rng.hpp"

using namespace ncbl;

TEST_CASE("spectral decomposition basics") {
    Spectrum id = spectral_decompose(HermitianOperator(Matrix::Identity(3, 3)));
    for (int i = 0; i < 3; ++i) CHECK(id.eigenvalues[i] == doctest::Approx(1.0).epsilon(1e-14));

    Matrix d(2, 2);
    d << Cplx(-1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(2, 0);
    Spectrum sd = spectral_decompose(HermitianOperator(d));
    CHECK(sd.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(sd.eigenvalues[1] == doctest::Approx(2.0));

    Matrix x(2, 2);
    x << Cplx(0, 0), Cplx(1, 0), Cplx(1, 0), Cplx(0, 0);
    Spectrum sx = spectral_decompose(HermitianOperator(x));
    CHECK(sx.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sx.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

    // reconstruction and orthonormality
    Rng rng(1);
    HermitianOperator h = random_hermitian(6, rng, 2.0);
    Spectrum s = spectral_decompose(h);
    Matrix rec = s.eigenvectors * s.eigenvalues.cast<Cplx>().asDiagonal() * s.eigenvectors.adjoint();
    CHECK((rec - h.mat()).norm() <= 1e-10 * (1.0 + h.mat().norm()));
    CHECK((s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(6, 6)).norm() <= 1e-10);
}

TEST_CASE("hermitian symmetrization on construction") {
    Matrix m(2, 2);
    m << Cplx(1, 0), Cplx(2, 1), Cplx(2, -1 + 1e-13), Cplx(3, 0);
    HermitianOperator h(m);
    CHECK(std::abs(h.mat()(0, 1) - std::conj(h.mat()(1, 0))) <= 1e-15);
}

TEST_CASE("matrix exponential") {
    HermitianOperator z(Matrix::Zero(4, 4));
    CHECK((matrix_exp(z).mat() - Matrix::Identity(4, 4)).norm() <= 1e-14);

    Matrix d(2, 2);
    d << Cplx(std::log(2.0), 0), Cplx(0, 0), Cplx(0, 0), Cplx(std::log(3.0), 0);
    Matrix e = matrix_exp(HermitianOperator(d)).mat();
    CHECK(e(0, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e(1, 1).real() == doctest::Approx(3.0).epsilon(1e-12));

    // 30-term truncated power series as an independent oracle
    Rng rng(7);
    HermitianOperator h = random_hermitian(4, rng, 1.0);
    Matrix series = Matrix::Identity(4, 4);
    Matrix term = Matrix::Identity(4, 4);
    for (int k = 1; k <= 30; ++k) {
        term = (term * h.mat()) / static_cast<double>(k);
        series += term;
    }
    Matrix e2 = matrix_exp(h).mat();
    CHECK((e2 - series).norm() <= 1e-9 * series.norm());
}

TEST_CASE("matrix logarithm and support handling") {
    Density id(HermitianOperator(Matrix::Identity(4, 4)), TraceFunctional::normalized(4));
    CHECK(matrix_log(id).mat().norm() <= 1e-14);

    Matrix half = 0.5 * Matrix::Identity(2, 2);
    Density rho(HermitianOperator(half), TraceFunctional::trace(2));
    Matrix lg = matrix_log(rho).mat();
    CHECK(lg(0, 0).real() == doctest::Approx(std::log(0.5)).epsilon(1e-12));
    CHECK(lg(1, 1).real() == doctest::Approx(std::log(0.5)).epsilon(1e-12));

    // rank-1 projector: log vanishes on the support, exp(log) = rho there
    Matrix proj = Matrix::Zero(2, 2);
    proj(0, 0) = 1.0;
    Density p(HermitianOperator(proj), TraceFunctional::trace(2));
    Matrix lp = matrix_log(p).mat();
    CHECK(std::abs(lp(0, 0)) <= 1e-14);
    CHECK(entropy(p) == doctest::Approx(0.0).epsilon(1e-12));  // 0 ln 0 = 0
}

TEST_CASE("entropy values") {
    Density mixed(HermitianOperator(0.25 * Matrix::Identity(4, 4)), TraceFunctional::trace(4));
    CHECK(entropy(mixed) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

    Density flat(HermitianOperator(Matrix::Identity(4, 4)), TraceFunctional::normalized(4));
    CHECK(entropy(flat) == doctest::Approx(0.0).epsilon(1e-14));

    // two-level density with eigenvalues 1 +- 1/2 under the normalized trace
    Matrix d(2, 2);
    d << Cplx(1.5, 0), Cplx(0, 0), Cplx(0, 0), Cplx(0.5, 0);
    Density rho(HermitianOperator(d), TraceFunctional::normalized(2));
    double expected = -0.5 * (1.5 * std::log(1.5) + 0.5 * std::log(0.5));
    CHECK(entropy(rho) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("relative entropy") {
    Rng rng(11);
    Density rho = random_density(5, rng, TraceFunctional::Kind::Trace, 1e-3);
    CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-10));

    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    Density pure(HermitianOperator(a), TraceFunctional::trace(2));
    Density unif(HermitianOperator(0.5 * Matrix::Identity(2, 2)), TraceFunctional::trace(2));
    CHECK(relative_entropy(pure, unif) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(std::isinf(relative_entropy(unif, pure)));
}

TEST_CASE("log trace exp with large shifts") {
    Matrix d(2, 2);
    d << Cplx(1000.0, 0), Cplx(0, 0), Cplx(0, 0), Cplx(-1000.0, 0);
    double v = log_trace_exp(HermitianOperator(d), TraceFunctional::trace(2));
    CHECK(v == doctest::Approx(1000.0).epsilon(1e-12));  // ln(e^1000 + e^-1000)
    double vn = log_trace_exp(HermitianOperator(Matrix::Zero(3, 3)), TraceFunctional::normalized(3));
    CHECK(vn == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("density validation") {
    CHECK_THROWS_AS(Density(HermitianOperator(Matrix::Identity(3, 3)), TraceFunctional::trace(3)),
                    NumericalError);
    Matrix neg = -Matrix::Identity(2, 2);
    CHECK_THROWS_AS(Density(HermitianOperator(neg), TraceFunctional::normalized(2)), NumericalError);
}
