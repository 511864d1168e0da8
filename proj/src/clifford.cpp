#include "ncbl/clifford.hpp"

#include <bit>
#include <cmath>

namespace ncbl {

namespace {

inline double parity_sign(std::uint32_t bits) {
    return (std::popcount(bits) & 1u) ? -1.0 : 1.0;
}

}  // namespace

CliffordAlgebra::CliffordAlgebra(int n) : n_(n) {
    if (n < 1 || n > 10) throw NumericalError("CliffordAlgebra: n must be in [1, 10]");
    const std::uint32_t size = 1u << n;
    zmask_.assign(size, 0);
    coeff_.assign(size, 1.0);
    // Jordan-Wigner rep of generator i (1-based): X on tensor slot i, Z on slots < i.
    // With Kronecker convention (first factor = high bits of the matrix index):
    //   xmask(i) = 1 << (n - i),  zmask(i) = ((1 << (i-1)) - 1) << (n - i + 1).
    std::vector<std::uint32_t> gen_x(static_cast<std::size_t>(n)), gen_z(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        gen_x[static_cast<std::size_t>(i - 1)] = 1u << (n - i);
        gen_z[static_cast<std::size_t>(i - 1)] = ((1u << (i - 1)) - 1u) << (n - i + 1);
    }
    xmask_.assign(size, 0);
    for (std::uint32_t alpha = 1; alpha < size; ++alpha) {
        // alpha = beta with lowest generator bit g appended in front:
        // Q^alpha = Q_{g+1} * Q^beta
        const int g = std::countr_zero(alpha);
        const std::uint32_t beta = alpha & (alpha - 1u);
        // (x1,z1,c1)(x2,z2,c2) = (x1^x2, z1^z2, c1 c2 (-1)^{popcount(z1 & x2)})
        const std::uint32_t x1 = gen_x[static_cast<std::size_t>(g)];
        const std::uint32_t z1 = gen_z[static_cast<std::size_t>(g)];
        xmask_[alpha] = x1 ^ xmask_[beta];
        zmask_[alpha] = z1 ^ zmask_[beta];
        coeff_[alpha] = coeff_[beta] * parity_sign(z1 & xmask_[beta]);
    }
}

Matrix CliffordAlgebra::basis_matrix(std::uint32_t alpha) const {
    const Eigen::Index d = matrix_dim();
    Matrix m = Matrix::Zero(d, d);
    for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(d); ++c)
        m(c ^ xmask_[alpha], c) = coeff_[alpha] * parity_sign(zmask_[alpha] & c);
    return m;
}

Matrix CliffordAlgebra::generator_matrix(int i) const {
    if (i < 0 || i >= n_) throw NumericalError("generator_matrix: index out of range");
    return basis_matrix(1u << i);
}

CliffordElement CliffordAlgebra::identity() const {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(basis_size());
    c[0] = 1.0;
    return CliffordElement(this, std::move(c));
}

CliffordElement CliffordAlgebra::basis_element(std::uint32_t alpha) const {
    if (alpha >= basis_size()) throw NumericalError("basis_element: multi-index out of range");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(basis_size());
    c[alpha] = 1.0;
    return CliffordElement(this, std::move(c));
}

CliffordElement CliffordAlgebra::canonical_injection(const RealVector& x) const {
    if (x.size() != n_) throw NumericalError("canonical_injection: vector length mismatch");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(basis_size());
    for (int j = 0; j < n_; ++j) c[1u << j] = x[j];
    return CliffordElement(this, std::move(c));
}

Matrix CliffordAlgebra::to_matrix(const CliffordElement& A) const {
    const Eigen::Index d = matrix_dim();
    Matrix m = Matrix::Zero(d, d);
    for (std::uint32_t alpha = 0; alpha < basis_size(); ++alpha) {
        const Cplx xa = A.coefficient(alpha);
        if (xa == Cplx(0.0, 0.0)) continue;
        const Cplx v = xa * coeff_[alpha];
        for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(d); ++c)
            m(c ^ xmask_[alpha], c) += v * parity_sign(zmask_[alpha] & c);
    }
    return m;
}

CliffordElement CliffordAlgebra::from_matrix(const Matrix& M) const {
    const Eigen::Index d = matrix_dim();
    if (M.rows() != d || M.cols() != d)
        throw NumericalError("from_matrix: dimension mismatch");
    Eigen::VectorXcd out(basis_size());
    const double inv = 1.0 / static_cast<double>(d);
    for (std::uint32_t alpha = 0; alpha < basis_size(); ++alpha) {
        // x_alpha = tau((Q^alpha)^dagger M)
        Cplx acc(0.0, 0.0);
        for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(d); ++c)
            acc += coeff_[alpha] * parity_sign(zmask_[alpha] & c) * M(c ^ xmask_[alpha], c);
        out[alpha] = acc * inv;
    }
    return CliffordElement(this, std::move(out));
}

double CliffordAlgebra::product_sign(std::uint32_t alpha, std::uint32_t beta) const {
    const std::uint32_t gamma = alpha ^ beta;
    return coeff_[alpha] * coeff_[beta] * parity_sign(zmask_[alpha] & xmask_[beta]) * coeff_[gamma];
}

CliffordElement::CliffordElement(const CliffordAlgebra* algebra, Eigen::VectorXcd coefficients)
    : algebra_(algebra), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != static_cast<Eigen::Index>(algebra_->basis_size()))
        throw NumericalError("CliffordElement: coefficient vector has wrong length");
}

CliffordElement CliffordElement::operator+(const CliffordElement& o) const {
    return CliffordElement(algebra_, coeffs_ + o.coeffs_);
}

CliffordElement CliffordElement::operator-(const CliffordElement& o) const {
    return CliffordElement(algebra_, coeffs_ - o.coeffs_);
}

CliffordElement CliffordElement::operator*(const CliffordElement& o) const {
    const std::uint32_t size = algebra_->basis_size();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(size);
    for (std::uint32_t a = 0; a < size; ++a) {
        const Cplx xa = coeffs_[a];
        if (xa == Cplx(0.0, 0.0)) continue;
        for (std::uint32_t b = 0; b < size; ++b) {
            const Cplx xb = o.coeffs_[b];
            if (xb == Cplx(0.0, 0.0)) continue;
            out[a ^ b] += xa * xb * algebra_->product_sign(a, b);
        }
    }
    return CliffordElement(algebra_, std::move(out));
}

CliffordElement CliffordElement::operator*(Cplx s) const {
    return CliffordElement(algebra_, (coeffs_ * s).eval());
}

CliffordElement CliffordElement::adjoint() const {
    Eigen::VectorXcd out(coeffs_.size());
    for (std::uint32_t a = 0; a < algebra_->basis_size(); ++a)
        out[a] = std::conj(coeffs_[a]) * algebra_->square_sign(a);
    return CliffordElement(algebra_, std::move(out));
}

bool CliffordElement::is_self_adjoint(double tol) const {
    return (coeffs_ - adjoint().coeffs_).cwiseAbs().maxCoeff() <= tol;
}

Cplx tau(const CliffordElement& A) { return A.coefficient(0); }

Cplx l2_inner(const CliffordElement& A, const CliffordElement& B) {
    return A.coefficients().dot(B.coefficients());
}

std::vector<CliffordElement> subalgebra_generators(const CliffordAlgebra& algebra,
                                                  const SubspaceSpec& V) {
    if (V.ambient() != algebra.generators())
        throw NumericalError("subalgebra_generators: ambient dimension mismatch");
    std::vector<CliffordElement> gens;
    gens.reserve(static_cast<std::size_t>(V.dim()));
    for (int k = 0; k < V.dim(); ++k)
        gens.push_back(algebra.canonical_injection(V.basis().col(k)));
    return gens;
}

std::vector<CliffordElement> subalgebra_basis(const CliffordAlgebra& algebra,
                                              const SubspaceSpec& V) {
    std::vector<CliffordElement> gens = subalgebra_generators(algebra, V);
    const std::uint32_t size = 1u << V.dim();
    std::vector<CliffordElement> basis;
    basis.reserve(size);
    basis.push_back(algebra.identity());
    for (std::uint32_t beta = 1; beta < size; ++beta) {
        const int k = std::countr_zero(beta);
        basis.push_back(gens[static_cast<std::size_t>(k)] * basis[beta & (beta - 1u)]);
    }
    return basis;
}

CliffordElement conditional_expectation(const CliffordElement& rho, const SubspaceSpec& V) {
    const CliffordAlgebra& algebra = rho.algebra();
    std::vector<CliffordElement> basis = subalgebra_basis(algebra, V);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(algebra.basis_size());
    for (const CliffordElement& b : basis)
        out += l2_inner(b, rho) * b.coefficients();
    return CliffordElement(&algebra, std::move(out));
}

CliffordElement rho_a(const CliffordAlgebra& algebra, const RealVector& a) {
    if (a.norm() > 1.0 + 1e-12)
        throw NumericalError("rho_a: |a| > 1, not a density");
    return algebra.identity() + algebra.canonical_injection(a);
}

Density element_density(const CliffordAlgebra& algebra, const CliffordElement& rho) {
    return Density(HermitianOperator(algebra.to_matrix(rho)),
                   TraceFunctional::normalized(algebra.matrix_dim()));
}

double element_entropy(const CliffordAlgebra& algebra, const CliffordElement& rho) {
    Spectrum s = spectral_decompose(HermitianOperator(algebra.to_matrix(rho)));
    double acc = 0.0;
    const double w = 1.0 / static_cast<double>(algebra.matrix_dim());
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
        double x = std::max(s.eigenvalues[i], 0.0);
        if (x > 0.0) acc -= w * x * std::log(x);
    }
    return acc;
}

CliffordElement random_subalgebra_hermitian(const CliffordAlgebra& algebra,
                                            const SubspaceSpec& V, Rng& rng, double scale) {
    std::vector<CliffordElement> basis = subalgebra_basis(algebra, V);
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(algebra.basis_size());
    for (const CliffordElement& b : basis)
        acc += Cplx(rng.normal(), rng.normal()) * b.coefficients();
    CliffordElement e(&algebra, std::move(acc));
    CliffordElement h = (e + e.adjoint()) * Cplx(0.5, 0.0);
    double norm = h.coefficients().norm();
    if (norm > 0.0) h = h * Cplx(scale / norm, 0.0);
    return h;
}

VerificationReport verify_clifford_bl(const CliffordAlgebra& algebra, const FrameSpec& frame,
                                      const std::vector<CliffordElement>& hamiltonians,
                                      double tol) {
    if (frame.size() != static_cast<int>(hamiltonians.size()))
        throw NumericalError("verify_clifford_bl: one Hamiltonian per subspace required");
    const TraceFunctional tau_fn = TraceFunctional::normalized(algebra.matrix_dim());

    Eigen::VectorXcd total = Eigen::VectorXcd::Zero(algebra.basis_size());
    double rhs_log = 0.0;
    for (int j = 0; j < frame.size(); ++j) {
        const CliffordElement& H = hamiltonians[static_cast<std::size_t>(j)];
        if (!H.is_self_adjoint())
            throw NumericalError("verify_clifford_bl: Hamiltonian is not self-adjoint");
        total += H.coefficients();
        const double pj = frame.exponent(j);
        HermitianOperator pH(pj * algebra.to_matrix(H));
        rhs_log += log_trace_exp(pH, tau_fn) / pj;
    }
    CliffordElement sum(&algebra, std::move(total));
    double lhs_log = log_trace_exp(HermitianOperator(algebra.to_matrix(sum)), tau_fn);

    FrameCondition cond = check_frame_condition(frame);

    VerificationReport rep;
    rep.setting = "clifford-bl";
    rep.lhs = std::exp(lhs_log);
    rep.rhs = std::exp(rhs_log);
    rep.deficit = rhs_log - lhs_log;
    rep.tolerance = tol;
    rep.condition_violated = !cond.admissible;
    double scale = std::max({1.0, std::abs(lhs_log), std::abs(rhs_log)});
    rep.pass = cond.admissible && rep.deficit >= -tol * scale;
    return rep;
}

}  // namespace ncbl
