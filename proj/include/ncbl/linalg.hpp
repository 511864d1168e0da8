#ifndef NCBL_LINALG_HPP
#define NCBL_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ncbl {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Thrown when an eigensolver fails or an input violates a hard precondition.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense Hermitian matrix; inputs are symmetrized (H + H^*)/2 on construction
/// to absorb floating-point drift at module boundaries.
class HermitianOperator {
public:
    explicit HermitianOperator(Matrix m);

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& mat() const { return m_; }

    static HermitianOperator identity(Eigen::Index d);
    static HermitianOperator zero(Eigen::Index d);

private:
    Matrix m_;
};

/// Trace (Tr) or normalized trace (tau = Tr/dim).
class TraceFunctional {
public:
    enum class Kind { Trace, NormalizedTrace };

    TraceFunctional(Kind kind, Eigen::Index dim) : kind_(kind), dim_(dim) {}

    static TraceFunctional trace(Eigen::Index dim) { return {Kind::Trace, dim}; }
    static TraceFunctional normalized(Eigen::Index dim) { return {Kind::NormalizedTrace, dim}; }

    Kind kind() const { return kind_; }
    Eigen::Index dim() const { return dim_; }
    bool is_normalized() const { return kind_ == Kind::NormalizedTrace; }

    // weight applied to each eigenvalue when summing spectral data
    double weight() const { return is_normalized() ? 1.0 / static_cast<double>(dim_) : 1.0; }

    double operator()(const Matrix& A) const;
    double operator()(const HermitianOperator& A) const { return (*this)(A.mat()); }

    bool operator==(const TraceFunctional& o) const { return kind_ == o.kind_ && dim_ == o.dim_; }

private:
    Kind kind_;
    Eigen::Index dim_;
};

/// Probability density: positive element with unit integral under its functional.
/// Eigenvalues down to -1e-10 are clamped to zero; anything lower is rejected.
class Density {
public:
    Density(HermitianOperator op, TraceFunctional functional);

    const HermitianOperator& op() const { return op_; }
    const Matrix& mat() const { return op_.mat(); }
    const TraceFunctional& functional() const { return functional_; }
    Eigen::Index dim() const { return op_.dim(); }

    static Density uniform(Eigen::Index d, TraceFunctional::Kind kind);

    static constexpr double kClampThreshold = 1e-10;

private:
    HermitianOperator op_;
    TraceFunctional functional_;
};

struct Spectrum {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // orthonormal columns
};

Spectrum spectral_decompose(const HermitianOperator& H);

HermitianOperator matrix_exp(const HermitianOperator& H);

/// Log on the support of rho. Eigenvalues below 1e-14 * lambda_max are treated
/// as exact zeros; the returned operator is zero on the kernel.
HermitianOperator matrix_log(const Density& rho);

/// General spectral function f applied to a Hermitian operator.
template <typename F>
HermitianOperator matrix_function(const HermitianOperator& H, F&& f) {
    Spectrum s = spectral_decompose(H);
    RealVector fv(s.eigenvalues.size());
    for (Eigen::Index i = 0; i < fv.size(); ++i) fv[i] = f(s.eigenvalues[i]);
    return HermitianOperator(s.eigenvectors * fv.asDiagonal() * s.eigenvectors.adjoint());
}

/// von Neumann entropy S(rho) = -lambda(rho ln rho), with 0 ln 0 = 0.
double entropy(const Density& rho);

/// H[rho|sigma] = lambda(rho (ln rho - ln sigma)); +infinity when
/// supp(rho) is not contained in supp(sigma).
double relative_entropy(const Density& rho, const Density& sigma);

/// ln lambda(e^H), evaluated with a max-eigenvalue shift so that norms up to
/// ~700 do not overflow.
double log_trace_exp(const HermitianOperator& H, const TraceFunctional& fn);

}  // namespace ncbl

#endif
