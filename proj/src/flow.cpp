#include "ncbl/flow.hpp"

#include <bit>
#include <cmath>

namespace ncbl {

namespace {

inline double below_sign(std::uint32_t alpha, int i) {
    const std::uint32_t below = alpha & ((1u << i) - 1u);
    return (std::popcount(below) & 1u) ? -1.0 : 1.0;
}

CliffordElement filtered(const CliffordElement& A, std::uint32_t required_bit) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(A.coefficients().size());
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(out.size()); ++a)
        if (a & required_bit) out[a] = A.coefficient(a);
    return CliffordElement(&A.algebra(), std::move(out));
}

}  // namespace

CliffordElement grading(const CliffordElement& A) {
    Eigen::VectorXcd out(A.coefficients().size());
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(out.size()); ++a)
        out[a] = (std::popcount(a) & 1u) ? -A.coefficient(a) : A.coefficient(a);
    return CliffordElement(&A.algebra(), std::move(out));
}

CliffordElement skew_derivative(const CliffordElement& A, int i) {
    const std::uint32_t bit = 1u << i;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(A.coefficients().size());
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(out.size()); ++a) {
        if (!(a & bit)) continue;
        // anticommute Q_i through the preceding factors, then remove it
        out[a ^ bit] = below_sign(a, i) * A.coefficient(a);
    }
    return CliffordElement(&A.algebra(), std::move(out));
}

CliffordElement skew_derivative_adjoint(const CliffordElement& A, int i) {
    const std::uint32_t bit = 1u << i;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(A.coefficients().size());
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(out.size()); ++a) {
        if (a & bit) continue;
        out[a | bit] = below_sign(a, i) * A.coefficient(a);
    }
    return CliffordElement(&A.algebra(), std::move(out));
}

CliffordElement number_operator(const CliffordElement& A) {
    Eigen::VectorXcd out(A.coefficients().size());
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(out.size()); ++a)
        out[a] = static_cast<double>(std::popcount(a)) * A.coefficient(a);
    return CliffordElement(&A.algebra(), std::move(out));
}

CliffordElement number_operator_component(const CliffordElement& A, int j) {
    return filtered(A, 1u << j);
}

CliffordElement restricted_number_operator(const CliffordElement& A, const SubspaceSpec& V) {
    const int n = A.algebra().generators();
    if (V.ambient() != n) throw NumericalError("restricted_number_operator: ambient mismatch");
    RealMatrix P = V.projection();
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(A.coefficients().size());
    for (int j = 0; j < n; ++j) {
        CliffordElement dj = skew_derivative(A, j);
        for (int i = 0; i < n; ++i) {
            if (std::abs(P(i, j)) < 1e-300) continue;
            acc += P(i, j) * skew_derivative_adjoint(dj, i).coefficients();
        }
    }
    return CliffordElement(&A.algebra(), std::move(acc));
}

CliffordElement mehler_flow(const CliffordElement& rho, double t) {
    if (t < 0.0) throw NumericalError("mehler_flow: t must be >= 0");
    Eigen::VectorXcd out(rho.coefficients().size());
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(out.size()); ++a)
        out[a] = std::exp(-t * static_cast<double>(std::popcount(a))) * rho.coefficient(a);
    return CliffordElement(&rho.algebra(), std::move(out));
}

Cplx dirichlet_form(const CliffordElement& A, const CliffordElement& B) {
    // = tau(A^* N B): diagonal in the Q^alpha basis
    Cplx acc(0.0, 0.0);
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(A.coefficients().size()); ++a)
        acc += static_cast<double>(std::popcount(a)) * std::conj(A.coefficient(a)) * B.coefficient(a);
    return acc;
}

Cplx restricted_dirichlet_form(const CliffordElement& A, const CliffordElement& B,
                               const SubspaceSpec& V) {
    const int n = A.algebra().generators();
    RealMatrix P = V.projection();
    Cplx acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        CliffordElement di = skew_derivative(A, i);
        for (int j = 0; j < n; ++j) {
            if (std::abs(P(i, j)) < 1e-300) continue;
            acc += P(i, j) * l2_inner(di, skew_derivative(B, j));
        }
    }
    return acc;
}

CliffordElement regularize_density(const CliffordAlgebra& algebra, const CliffordElement& rho) {
    Spectrum s = spectral_decompose(HermitianOperator(algebra.to_matrix(rho)));
    if (s.eigenvalues.minCoeff() >= 1e-12) return rho;
    const double eps = 1e-10;
    CliffordElement out = rho * Cplx(1.0 - eps, 0.0) + algebra.identity() * Cplx(eps, 0.0);
    Spectrum s2 = spectral_decompose(HermitianOperator(algebra.to_matrix(out)));
    if (s2.eigenvalues.minCoeff() <= 0.0)
        throw NumericalError("regularize_density: density not positive after regularization");
    return out;
}

CliffordElement element_log(const CliffordAlgebra& algebra, const CliffordElement& rho) {
    Spectrum s = spectral_decompose(HermitianOperator(algebra.to_matrix(rho)));
    if (s.eigenvalues.minCoeff() <= 0.0)
        throw NumericalError("element_log: element is not strictly positive");
    RealVector lv = s.eigenvalues.array().log();
    Matrix m = s.eigenvectors * lv.asDiagonal() * s.eigenvectors.adjoint();
    return algebra.from_matrix(m);
}

double entropy_production(const CliffordAlgebra& algebra, const CliffordElement& rho) {
    CliffordElement r = regularize_density(algebra, rho);
    CliffordElement lr = element_log(algebra, r);
    return dirichlet_form(lr, r).real();
}

double restricted_entropy_production(const CliffordAlgebra& algebra, const CliffordElement& rho,
                                     const SubspaceSpec& V) {
    CliffordElement r = regularize_density(algebra, rho);
    CliffordElement lr = element_log(algebra, r);
    return restricted_dirichlet_form(lr, r, V).real();
}

CliffordElement gross_hat(const CliffordElement& A, int j) {
    const std::uint32_t bit = 1u << j;
    Eigen::VectorXcd out(A.coefficients().size());
    for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(out.size()); ++a)
        out[a] = (a & bit) ? -A.coefficient(a) : A.coefficient(a);
    return CliffordElement(&A.algebra(), std::move(out));
}

namespace {

CliffordElement apply_spectral(const CliffordAlgebra& algebra, const CliffordElement& A,
                               GrossFunction f) {
    if (f == GrossFunction::Identity) return A;
    Spectrum s = spectral_decompose(HermitianOperator(algebra.to_matrix(A)));
    RealVector fv(s.eigenvalues.size());
    for (Eigen::Index i = 0; i < fv.size(); ++i) {
        double x = s.eigenvalues[i];
        switch (f) {
            case GrossFunction::Exp: fv[i] = std::exp(x); break;
            case GrossFunction::Log:
                if (x <= 0.0) throw NumericalError("verify_gross_formula: log needs positive A");
                fv[i] = std::log(x);
                break;
            case GrossFunction::Power: fv[i] = x * x; break;
            default: fv[i] = x;
        }
    }
    return algebra.from_matrix(s.eigenvectors * fv.asDiagonal() * s.eigenvectors.adjoint());
}

}  // namespace

VerificationReport verify_gross_formula(const CliffordAlgebra& algebra, const CliffordElement& A,
                                        GrossFunction f, double tol) {
    CliffordElement fA = apply_spectral(algebra, A, f);
    double worst = 0.0;
    double scale = 1.0 + fA.coefficients().norm();
    for (int j = 0; j < algebra.generators(); ++j) {
        CliffordElement fhat = apply_spectral(algebra, gross_hat(A, j), f);
        CliffordElement lhs = number_operator_component(fA, j);
        CliffordElement rhs = (fA - fhat) * Cplx(0.5, 0.0);
        worst = std::max(worst, (lhs - rhs).coefficients().norm());
    }
    VerificationReport rep;
    rep.setting = "gross-formula";
    rep.lhs = worst;
    rep.rhs = tol * scale;
    rep.deficit = rep.rhs - rep.lhs;
    rep.tolerance = tol;
    rep.pass = worst <= tol * scale;
    return rep;
}

VerificationReport verify_production_monotonicity(const CliffordAlgebra& algebra,
                                                  const CliffordElement& rho,
                                                  const SubspaceSpec& V, double tol) {
    CliffordElement marginal = conditional_expectation(rho, V);
    VerificationReport rep;
    rep.setting = "production-monotonicity";
    rep.lhs = entropy_production(algebra, marginal);       // D(rho_V)
    rep.rhs = restricted_entropy_production(algebra, rho, V);  // D_V(rho)
    rep.deficit = rep.rhs - rep.lhs;
    rep.tolerance = tol;
    rep.pass = rep.deficit >= -tol;
    return rep;
}

VerificationReport verify_deficit_monotone(const CliffordAlgebra& algebra,
                                           const CliffordElement& rho, const FrameSpec& frame,
                                           const std::vector<double>& t_grid,
                                           double step_tol) {
    FrameCondition cond = check_frame_condition(frame);
    VerificationReport rep;
    rep.setting = "deficit-monotone";
    rep.tolerance = step_tol;
    rep.condition_violated = !cond.admissible;
    if (!cond.admissible) {
        rep.pass = true;  // monotonicity not asserted without the frame condition
        return rep;
    }

    auto deficit_at = [&](double t) {
        CliffordElement rt = mehler_flow(rho, t);
        double acc = -element_entropy(algebra, rt);
        for (int j = 0; j < frame.size(); ++j)
            acc += element_entropy(algebra, conditional_expectation(rt, frame.subspace(j))) /
                   frame.exponent(j);
        return acc;
    };

    bool ok = true;
    double prev = 0.0;
    bool have_prev = false;
    for (double t : t_grid) {
        double a = deficit_at(t);
        if (have_prev && a > prev + step_tol) ok = false;
        prev = a;
        have_prev = true;
    }
    double tail = deficit_at(40.0);
    if (std::abs(tail) > 1e-9) ok = false;

    rep.lhs = tail;
    rep.rhs = have_prev ? prev : 0.0;
    rep.deficit = 0.0;
    rep.pass = ok;
    return rep;
}

}  // namespace ncbl
