#include "ncbl/frames.hpp"

#include <cmath>
#include <limits>

namespace ncbl {

SubspaceSpec::SubspaceSpec(int ambient, RealMatrix basis) : ambient_(ambient), basis_(std::move(basis)) {
    if (basis_.rows() != ambient_ || basis_.cols() < 1 || basis_.cols() > ambient_)
        throw NumericalError("SubspaceSpec: basis shape invalid");
    RealMatrix gram = basis_.transpose() * basis_;
    double err = (gram - RealMatrix::Identity(basis_.cols(), basis_.cols())).cwiseAbs().maxCoeff();
    if (err > 1e-12)
        throw NumericalError("SubspaceSpec: basis not orthonormal (gram error " + std::to_string(err) + ")");
}

SubspaceSpec SubspaceSpec::full(int n) { return SubspaceSpec(n, RealMatrix::Identity(n, n)); }

SubspaceSpec SubspaceSpec::span(const RealVector& u) {
    double norm = u.norm();
    if (norm < 1e-12) throw NumericalError("SubspaceSpec::span: zero vector");
    return SubspaceSpec(static_cast<int>(u.size()), u / norm);
}

SubspaceSpec SubspaceSpec::orthonormalized(int ambient, const RealMatrix& raw) {
    RealMatrix b(ambient, raw.cols());
    int k = 0;
    for (Eigen::Index c = 0; c < raw.cols(); ++c) {
        RealVector v = raw.col(c);
        for (int i = 0; i < k; ++i) v -= b.col(i).dot(v) * b.col(i);
        // second pass for numerical orthogonality
        for (int i = 0; i < k; ++i) v -= b.col(i).dot(v) * b.col(i);
        double norm = v.norm();
        if (norm < 1e-10) throw NumericalError("SubspaceSpec: dependent basis columns");
        b.col(k++) = v / norm;
    }
    return SubspaceSpec(ambient, b.leftCols(k));
}

SubspaceSpec SubspaceSpec::random(int ambient, int dim, Rng& rng) {
    RealMatrix raw(ambient, dim);
    for (int i = 0; i < ambient; ++i)
        for (int j = 0; j < dim; ++j) raw(i, j) = rng.normal();
    return orthonormalized(ambient, raw);
}

FrameSpec::FrameSpec(int ambient, std::vector<std::pair<SubspaceSpec, double>> parts)
    : ambient_(ambient), parts_(std::move(parts)) {
    if (parts_.empty()) throw NumericalError("FrameSpec: no subspaces");
    for (const auto& [V, p] : parts_) {
        if (V.ambient() != ambient_) throw NumericalError("FrameSpec: ambient dimension mismatch");
        if (p < 1.0) throw NumericalError("FrameSpec: exponent p_j must be >= 1");
    }
}

RealMatrix FrameSpec::slack() const {
    RealMatrix s = RealMatrix::Identity(ambient_, ambient_);
    for (const auto& [V, p] : parts_) s -= V.projection() / p;
    return s;
}

FrameCondition check_frame_condition(const FrameSpec& frame, double tol) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(frame.slack());
    FrameCondition out;
    out.min_eigenvalue = solver.eigenvalues()[0];
    out.witness = solver.eigenvectors().col(0);
    out.admissible = out.min_eigenvalue >= -tol;
    return out;
}

FrameSpec random_tight_frame(int n, int N, std::uint64_t seed) {
    if (N < n) throw NumericalError("random_tight_frame: need N >= n");
    Rng rng(seed);
    double w = static_cast<double>(n) / static_cast<double>(N);  // 1/p_j, equal weights
    std::vector<RealVector> u(static_cast<std::size_t>(N));
    for (auto& v : u) {
        v = RealVector(n);
        for (int i = 0; i < n; ++i) v[i] = rng.normal();
        v.normalize();
    }
    // fixed-point rescaling u_j <- normalize(S^{-1/2} u_j) pulls the frame
    // operator toward the identity; the final S^{-1/2} application is kept
    // un-normalized and its norms are absorbed into per-vector exponents,
    // which makes the frame exactly tight
    auto frame_op = [&] {
        RealMatrix s = RealMatrix::Zero(n, n);
        for (const auto& v : u) s += w * v * v.transpose();
        return s;
    };
    auto inv_sqrt_of = [&](const RealMatrix& s) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(s);
        if (es.eigenvalues()[0] <= 1e-12)
            throw NumericalError("random_tight_frame: degenerate frame operator");
        RealVector inv_sqrt = es.eigenvalues().cwiseInverse().cwiseSqrt();
        return RealMatrix(es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose());
    };
    for (int iter = 0; iter < 300; ++iter) {
        RealMatrix s = frame_op();
        if ((s - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-13) break;
        RealMatrix shalf = inv_sqrt_of(s);
        for (auto& v : u) {
            v = shalf * v;
            v.normalize();
        }
    }
    RealMatrix shalf = inv_sqrt_of(frame_op());
    std::vector<std::pair<SubspaceSpec, double>> parts;
    parts.reserve(u.size());
    for (auto& v : u) {
        v = shalf * v;
        double p = 1.0 / (w * v.squaredNorm());
        if (p < 1.0)
            throw NumericalError("random_tight_frame: rescaling did not converge to exponents >= 1");
        parts.emplace_back(SubspaceSpec::span(v), p);
    }
    return FrameSpec(n, std::move(parts));
}

double psi(double x) {
    double ax = std::abs(x);
    if (ax > 1.0) return std::numeric_limits<double>::infinity();
    auto term = [](double y) { return y > 0.0 ? y * std::log(y) : 0.0; };
    return 0.5 * (term(1.0 + x) + term(1.0 - x));
}

double psi_prime(double x) { return std::atanh(x); }

double psi_star(double y) {
    // ln cosh(y), stable for large |y|
    double ay = std::abs(y);
    return ay + std::log1p(std::exp(-2.0 * ay)) - std::log(2.0);
}

VerificationReport verify_psi_subadditivity(const RealVector& a, const FrameSpec& frame, double tol) {
    double na = a.norm();
    if (na > 1.0 + 1e-12) throw NumericalError("verify_psi_subadditivity: |a| > 1");
    VerificationReport rep;
    rep.setting = "psi-subadditivity";
    rep.tolerance = tol;

    double sum = 0.0;
    double rational_sum = 0.0;
    for (int j = 0; j < frame.size(); ++j) {
        double pj = frame.exponent(j);
        double nproj = frame.subspace(j).project(a).norm();
        sum += psi(std::min(nproj, 1.0)) / pj;
        if (na < 1.0) rational_sum += (nproj * nproj) / (1.0 - nproj * nproj) / pj;
    }
    rep.lhs = sum;
    rep.rhs = psi(std::min(na, 1.0));
    rep.deficit = rep.rhs - rep.lhs;

    bool rational_ok = true;
    if (na < 1.0) {
        double lhs_rat = (na * na) / (1.0 - na * na);
        rational_ok = lhs_rat >= rational_sum - tol * std::max(1.0, lhs_rat);
    }
    FrameCondition cond = check_frame_condition(frame);
    rep.condition_violated = !cond.admissible;
    rep.pass = cond.admissible ? (rep.deficit >= -tol && rational_ok) : true;
    return rep;
}

VerificationReport verify_cosh_inequality(const RealVector& b, const FrameSpec& frame, double tol) {
    const int n = frame.ambient();
    if (b.size() != frame.size())
        throw NumericalError("verify_cosh_inequality: need one coefficient per frame vector");
    RealMatrix s = RealMatrix::Zero(n, n);
    RealVector combo = RealVector::Zero(n);
    double rhs = 0.0;
    for (int j = 0; j < frame.size(); ++j) {
        if (frame.subspace(j).dim() != 1)
            throw NumericalError("verify_cosh_inequality: frame subspaces must be one-dimensional");
        double pj = frame.exponent(j);
        RealVector u = frame.subspace(j).basis().col(0);
        s += (u * u.transpose()) / pj;
        combo += b[j] * u;
        rhs += psi_star(pj * b[j]) / pj;
    }
    if ((s - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8)
        throw NumericalError("verify_cosh_inequality: frame is not tight");

    VerificationReport rep;
    rep.setting = "cosh";
    rep.tolerance = tol;
    rep.lhs = psi_star(combo.norm());
    rep.rhs = rhs;
    rep.deficit = rep.rhs - rep.lhs;
    rep.pass = rep.deficit >= -tol;
    return rep;
}

}  // namespace ncbl
