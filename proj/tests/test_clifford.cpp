#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncbl/clifford.hpp"
#include "ncbl/frames.hpp"
#include "ncbl/random_ensembles.hpp"

using namespace ncbl;

TEST_CASE("generators satisfy the anticommutation relations") {
    for (int n = 1; n <= 5; ++n) {
        CliffordAlgebra alg(n);
        Matrix I = Matrix::Identity(alg.matrix_dim(), alg.matrix_dim());
        for (int i = 0; i < n; ++i) {
            Matrix qi = alg.generator_matrix(i);
            CHECK((qi - qi.adjoint()).norm() <= 1e-14);
            for (int j = 0; j < n; ++j) {
                Matrix qj = alg.generator_matrix(j);
                Matrix anti = qi * qj + qj * qi;
                if (i == j)
                    CHECK((anti - 2.0 * I).norm() <= 1e-13);
                else
                    CHECK(anti.norm() <= 1e-13);
            }
        }
    }
}

TEST_CASE("explicit two-generator matrices") {
    CliffordAlgebra alg(2);
    // Q_1 = X x I, Q_2 = Z x X in the qubit ordering used here
    Matrix q0 = alg.generator_matrix(0);
    Matrix q1 = alg.generator_matrix(1);
    Matrix x(2, 2), z(2, 2), id = Matrix::Identity(2, 2);
    x << Cplx(0, 0), Cplx(1, 0), Cplx(1, 0), Cplx(0, 0);
    z << Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(-1, 0);
    Matrix xi = Matrix::Zero(4, 4), zx = Matrix::Zero(4, 4);
    xi.block(0, 2, 2, 2) = id;
    xi.block(2, 0, 2, 2) = id;
    zx.block(0, 0, 2, 2) = x;
    zx.block(2, 2, 2, 2) = -x;
    CHECK((q0 - xi).norm() <= 1e-14);
    CHECK((q1 - zx).norm() <= 1e-14);
}

TEST_CASE("basis elements multiply with the expected signs") {
    CliffordAlgebra alg(3);
    // Q^{110} = Q_1 Q_2; Q_2 Q_1 = -Q_1 Q_2
    CliffordElement q1 = alg.basis_element(0b001);
    CliffordElement q2 = alg.basis_element(0b010);
    CliffordElement ab = q1 * q2;
    CliffordElement ba = q2 * q1;
    CHECK((ab + ba).coefficients().norm() <= 1e-14);
    CHECK(std::abs(ab.coefficient(0b011) - Cplx(1, 0)) <= 1e-14);
    // (Q_1 Q_2)^2 = -I
    CliffordElement sq = ab * ab;
    CHECK(std::abs(sq.coefficient(0) + Cplx(1, 0)) <= 1e-14);
    CHECK(alg.square_sign(0b011) == doctest::Approx(-1.0));
    CHECK(alg.square_sign(0b001) == doctest::Approx(1.0));
}

TEST_CASE("matrix conversion round trip") {
    CliffordAlgebra alg(4);
    Rng rng(5);
    Eigen::VectorXcd c(alg.basis_size());
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Cplx(rng.normal(), rng.normal());
    CliffordElement e(&alg, c);
    CliffordElement back = alg.from_matrix(alg.to_matrix(e));
    CHECK((back.coefficients() - c).norm() <= 1e-12 * c.norm());

    // products agree in both representations
    CliffordElement f = alg.basis_element(0b1010);
    Matrix lhs = alg.to_matrix(e * f);
    Matrix rhs = alg.to_matrix(e) * alg.to_matrix(f);
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
}

TEST_CASE("tau is the normalized matrix trace") {
    CliffordAlgebra alg(3);
    Rng rng(9);
    Eigen::VectorXcd c(alg.basis_size());
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Cplx(rng.normal(), rng.normal());
    CliffordElement e(&alg, c);
    Cplx t1 = tau(e);
    Cplx t2 = alg.to_matrix(e).trace() / 8.0;
    CHECK(std::abs(t1 - t2) <= 1e-13);
    // basis elements other than the identity are traceless
    for (std::uint32_t a = 1; a < alg.basis_size(); ++a)
        CHECK(std::abs(alg.basis_matrix(a).trace()) <= 1e-13);
}

TEST_CASE("canonical injection is isometric") {
    CliffordAlgebra alg(4);
    Rng rng(15);
    RealVector x(4), y(4);
    for (int i = 0; i < 4; ++i) {
        x[i] = rng.normal();
        y[i] = rng.normal();
    }
    CliffordElement jx = alg.canonical_injection(x);
    CliffordElement jy = alg.canonical_injection(y);
    // J(x)J(y) + J(y)J(x) = 2 <x,y> I
    CliffordElement anti = jx * jy + jy * jx;
    CHECK(std::abs(anti.coefficient(0) - Cplx(2.0 * x.dot(y), 0)) <= 1e-12);
    CHECK(std::abs(l2_inner(jx, jy) - Cplx(x.dot(y), 0)) <= 1e-12);
}

TEST_CASE("conditional expectation projects onto the subalgebra") {
    CliffordAlgebra alg(3);
    RealVector e0(3);
    e0 << 1, 0, 0;
    SubspaceSpec V = SubspaceSpec::span(e0);
    CliffordElement q1 = alg.basis_element(0b001);
    CliffordElement q2 = alg.basis_element(0b010);
    CHECK((conditional_expectation(q1, V).coefficients() - q1.coefficients()).norm() <= 1e-13);
    CHECK(conditional_expectation(q2, V).coefficients().norm() <= 1e-13);

    // idempotent, trace preserving, positivity preserving on a random density
    Rng rng(21);
    SubspaceSpec W = SubspaceSpec::random(3, 2, rng);
    Density rho = random_density(8, rng, TraceFunctional::Kind::NormalizedTrace, 1e-4);
    CliffordElement r = alg.from_matrix(rho.mat());
    CliffordElement er = conditional_expectation(r, W);
    CliffordElement eer = conditional_expectation(er, W);
    CHECK((er.coefficients() - eer.coefficients()).norm() <= 1e-12);
    CHECK(std::abs(tau(er) - tau(r)) <= 1e-12);
    Spectrum s = spectral_decompose(HermitianOperator(alg.to_matrix(er)));
    CHECK(s.eigenvalues.minCoeff() >= -1e-10);
}

TEST_CASE("two-point densities and their entropy") {
    CliffordAlgebra alg(3);
    Rng rng(33);
    for (int t = 0; t < 50; ++t) {
        RealVector a = rng.uniform(0.0, 0.99) * random_unit_vector(3, rng);
        CliffordElement rho = rho_a(alg, a);
        CHECK(element_entropy(alg, rho) == doctest::Approx(-psi(a.norm())).epsilon(1e-10));
        // marginal of rho_a is rho_{P a}
        SubspaceSpec V = SubspaceSpec::random(3, 1 + static_cast<int>(rng.integer(0, 2)), rng);
        CliffordElement marg = conditional_expectation(rho, V);
        CliffordElement expected = rho_a(alg, V.project(a));
        CHECK((marg.coefficients() - expected.coefficients()).norm() <= 1e-12);
    }
    RealVector big(3);
    big << 1.2, 0, 0;
    CHECK_THROWS(rho_a(alg, big));
}

TEST_CASE("one-dimensional reduction matches the scalar cosh bound") {
    CliffordAlgebra alg(2);
    FrameSpec frame = random_tight_frame(2, 3, 11);
    Rng rng(41);
    for (int t = 0; t < 30; ++t) {
        RealVector b(3);
        std::vector<CliffordElement> hs;
        for (int j = 0; j < 3; ++j) {
            b[j] = 2.0 * (2.0 * rng.uniform() - 1.0);
            hs.push_back(alg.canonical_injection(b[j] * frame.subspace(j).basis().col(0)));
        }
        VerificationReport bl = verify_clifford_bl(alg, frame, hs);
        VerificationReport sc = verify_cosh_inequality(b, frame);
        CHECK(bl.deficit == doctest::Approx(sc.deficit).epsilon(1e-9));
        CHECK(bl.pass);
    }
}

TEST_CASE("clifford inequality on random admissible frames") {
    Rng rng(51);
    for (int t = 0; t < 30; ++t) {
        int n = 2 + static_cast<int>(rng.integer(0, 2));
        CliffordAlgebra alg(n);
        int N = 1 + static_cast<int>(rng.integer(0, 2));
        std::vector<std::pair<SubspaceSpec, double>> parts;
        for (int j = 0; j < N; ++j)
            parts.emplace_back(SubspaceSpec::random(n, 1 + static_cast<int>(rng.integer(0, static_cast<std::uint64_t>(n - 1))), rng),
                               static_cast<double>(N + 1));
        FrameSpec frame(n, std::move(parts));
        std::vector<CliffordElement> hs;
        for (int j = 0; j < N; ++j)
            hs.push_back(random_subalgebra_hermitian(alg, frame.subspace(j), rng, 1.5));
        VerificationReport rep = verify_clifford_bl(alg, frame, hs);
        CHECK(rep.pass);
        CHECK(!rep.condition_violated);
        CHECK(rep.deficit >= -1e-9);
    }
}

TEST_CASE("violated frame condition is flagged") {
    CliffordAlgebra alg(2);
    std::vector<std::pair<SubspaceSpec, double>> parts;
    parts.emplace_back(SubspaceSpec::full(2), 1.0);
    parts.emplace_back(SubspaceSpec::full(2), 1.0);
    FrameSpec frame(2, std::move(parts));
    std::vector<CliffordElement> hs;
    for (int j = 0; j < 2; ++j) hs.push_back(alg.identity() * Cplx(0.0, 0.0));
    VerificationReport rep = verify_clifford_bl(alg, frame, hs);
    CHECK(rep.condition_violated);
}
