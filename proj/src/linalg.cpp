#include "ncbl/linalg.hpp"

#include <cmath>
#include <limits>

namespace ncbl {

namespace {

constexpr double kSupportCutoffRel = 1e-14;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

HermitianOperator::HermitianOperator(Matrix m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw NumericalError("HermitianOperator: matrix must be square and non-empty");
    m_ = 0.5 * (m + m.adjoint().eval());
}

HermitianOperator HermitianOperator::identity(Eigen::Index d) {
    return HermitianOperator(Matrix::Identity(d, d));
}

HermitianOperator HermitianOperator::zero(Eigen::Index d) {
    return HermitianOperator(Matrix::Zero(d, d));
}

double TraceFunctional::operator()(const Matrix& A) const {
    if (A.rows() != dim_)
        throw NumericalError("TraceFunctional: dimension mismatch");
    double t = A.trace().real();
    return is_normalized() ? t / static_cast<double>(dim_) : t;
}

Density::Density(HermitianOperator op, TraceFunctional functional)
    : op_(std::move(op)), functional_(functional) {
    if (op_.dim() != functional_.dim())
        throw NumericalError("Density: functional dimension mismatch");
    Spectrum s = spectral_decompose(op_);
    double lo = s.eigenvalues.minCoeff();
    if (lo < -kClampThreshold)
        throw NumericalError("Density: negative eigenvalue " + std::to_string(lo));
    if (lo < 0.0) {
        RealVector clamped = s.eigenvalues.cwiseMax(0.0);
        op_ = HermitianOperator(s.eigenvectors * clamped.asDiagonal() * s.eigenvectors.adjoint());
    }
    double mass = functional_(op_);
    if (std::abs(mass - 1.0) > 1e-10)
        throw NumericalError("Density: functional(op) = " + std::to_string(mass) + ", expected 1");
}

Density Density::uniform(Eigen::Index d, TraceFunctional::Kind kind) {
    TraceFunctional fn(kind, d);
    double scale = kind == TraceFunctional::Kind::Trace ? 1.0 / static_cast<double>(d) : 1.0;
    return Density(HermitianOperator(scale * Matrix::Identity(d, d)), fn);
}

Spectrum spectral_decompose(const HermitianOperator& H) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(H.mat());
    if (solver.info() != Eigen::Success) {
        double residual = std::numeric_limits<double>::quiet_NaN();
        throw NumericalError("spectral_decompose: eigensolver failed to converge, residual " +
                             std::to_string(residual));
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianOperator matrix_exp(const HermitianOperator& H) {
    return matrix_function(H, [](double x) { return std::exp(x); });
}

HermitianOperator matrix_log(const Density& rho) {
    Spectrum s = spectral_decompose(rho.op());
    double top = s.eigenvalues.maxCoeff();
    if (top <= 0.0)
        throw NumericalError("matrix_log: density is identically zero");
    double cutoff = kSupportCutoffRel * top;
    RealVector lv(s.eigenvalues.size());
    for (Eigen::Index i = 0; i < lv.size(); ++i)
        lv[i] = s.eigenvalues[i] > cutoff ? std::log(s.eigenvalues[i]) : 0.0;
    return HermitianOperator(s.eigenvectors * lv.asDiagonal() * s.eigenvectors.adjoint());
}

double entropy(const Density& rho) {
    Spectrum s = spectral_decompose(rho.op());
    double w = rho.functional().weight();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        acc -= w * xlogx(std::max(s.eigenvalues[i], 0.0));
    return acc;
}

double relative_entropy(const Density& rho, const Density& sigma) {
    if (rho.dim() != sigma.dim() || !(rho.functional() == sigma.functional()))
        throw NumericalError("relative_entropy: dimension or functional mismatch");

    Spectrum ss = spectral_decompose(sigma.op());
    double top = ss.eigenvalues.maxCoeff();
    double cutoff = kSupportCutoffRel * std::max(top, 0.0);

    // kernel projector of sigma; supp(rho) must lie inside supp(sigma)
    Matrix kernel = Matrix::Zero(sigma.dim(), sigma.dim());
    RealVector logs(ss.eigenvalues.size());
    for (Eigen::Index i = 0; i < ss.eigenvalues.size(); ++i) {
        if (ss.eigenvalues[i] > cutoff) {
            logs[i] = std::log(ss.eigenvalues[i]);
        } else {
            logs[i] = 0.0;
            kernel += ss.eigenvectors.col(i) * ss.eigenvectors.col(i).adjoint();
        }
    }
    double leak = (rho.mat() * kernel).trace().real();
    if (leak > 1e-12)
        return std::numeric_limits<double>::infinity();

    Matrix log_sigma = ss.eigenvectors * logs.asDiagonal() * ss.eigenvectors.adjoint();

    Spectrum rs = spectral_decompose(rho.op());
    double w = rho.functional().weight();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < rs.eigenvalues.size(); ++i)
        acc += w * xlogx(std::max(rs.eigenvalues[i], 0.0));
    acc -= w * (rho.mat() * log_sigma).trace().real();
    return acc;
}

double log_trace_exp(const HermitianOperator& H, const TraceFunctional& fn) {
    Spectrum s = spectral_decompose(H);
    double shift = s.eigenvalues.maxCoeff();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        acc += std::exp(s.eigenvalues[i] - shift);
    double out = shift + std::log(acc);
    if (fn.is_normalized()) out -= std::log(static_cast<double>(H.dim()));
    return out;
}

}  // namespace ncbl
