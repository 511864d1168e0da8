#ifndef NCBL_CLIFFORD_HPP
#define NCBL_CLIFFORD_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "ncbl/frames.hpp"
#include "ncbl/linalg.hpp"
#include "ncbl/report.hpp"
#include "ncbl/rng.hpp"

namespace ncbl {

class CliffordElement;

/// Clifford algebra over R^n, generators in the Jordan-Wigner convention
/// Q_i = Z^{(i-1)} x X x I^{(n-i)}. Elements live in the 2^n coefficient
/// space over the multi-index basis Q^alpha; matrices are 2^n x 2^n.
///
/// Internally each Q^alpha is tracked as a signed X/Z mask pair
/// (coeff * X^xmask Z^zmask with (X^x Z^z)|c> = (-1)^{z.c} |c ^ x>), which
/// makes products, traces and matrix conversion O(2^n) per basis element.
class CliffordAlgebra {
public:
    explicit CliffordAlgebra(int n);

    int generators() const { return n_; }
    std::uint32_t basis_size() const { return 1u << n_; }
    Eigen::Index matrix_dim() const { return Eigen::Index(1) << n_; }

    Matrix generator_matrix(int i) const;          // Q_i, 1-based index not used: i in [0, n)
    Matrix basis_matrix(std::uint32_t alpha) const;  // Q^alpha

    CliffordElement identity() const;
    CliffordElement basis_element(std::uint32_t alpha) const;
    /// J(x) = sum x_j Q_j.
    CliffordElement canonical_injection(const RealVector& x) const;

    Matrix to_matrix(const CliffordElement& A) const;
    CliffordElement from_matrix(const Matrix& M) const;

    /// Product sign: Q^alpha Q^beta = sign * Q^{alpha xor beta}.
    double product_sign(std::uint32_t alpha, std::uint32_t beta) const;
    /// (Q^alpha)^2 = sign * I, sign = (-1)^{|alpha|(|alpha|-1)/2}.
    double square_sign(std::uint32_t alpha) const { return product_sign(alpha, alpha); }

private:
    friend class CliffordElement;
    int n_;
    std::vector<std::uint32_t> xmask_;  // per alpha
    std::vector<std::uint32_t> zmask_;  // per alpha
    std::vector<double> coeff_;         // per alpha, +-1
};

/// Element of the Clifford algebra as a dense coefficient vector over Q^alpha.
class CliffordElement {
public:
    CliffordElement(const CliffordAlgebra* algebra, Eigen::VectorXcd coefficients);

    const CliffordAlgebra& algebra() const { return *algebra_; }
    const Eigen::VectorXcd& coefficients() const { return coeffs_; }
    Eigen::VectorXcd& coefficients() { return coeffs_; }
    Cplx coefficient(std::uint32_t alpha) const { return coeffs_[alpha]; }

    CliffordElement operator+(const CliffordElement& o) const;
    CliffordElement operator-(const CliffordElement& o) const;
    CliffordElement operator*(const CliffordElement& o) const;
    CliffordElement operator*(Cplx s) const;
    CliffordElement adjoint() const;

    bool is_self_adjoint(double tol = 1e-10) const;

private:
    const CliffordAlgebra* algebra_;
    Eigen::VectorXcd coeffs_;
};

inline CliffordElement operator*(Cplx s, const CliffordElement& a) { return a * s; }

/// tau picks the identity coefficient; equals the normalized matrix trace.
Cplx tau(const CliffordElement& A);

/// L^2(tau) inner product <A,B> = tau(A^* B) = sum conj(a_alpha) b_alpha.
Cplx l2_inner(const CliffordElement& A, const CliffordElement& B);

/// Generators J(u_1)..J(u_m) of the Clifford subalgebra over V.
std::vector<CliffordElement> subalgebra_generators(const CliffordAlgebra& algebra,
                                                   const SubspaceSpec& V);

/// The 2^m basis elements J(u)^beta of c(V), orthonormal in L^2(tau),
/// in ascending multi-index order over the chosen basis of V.
std::vector<CliffordElement> subalgebra_basis(const CliffordAlgebra& algebra,
                                              const SubspaceSpec& V);

/// L^2(tau)-orthogonal projection onto c(V); trace- and positivity-preserving.
CliffordElement conditional_expectation(const CliffordElement& rho, const SubspaceSpec& V);

/// rho_a = I + a.Q, a density under tau iff |a| <= 1.
CliffordElement rho_a(const CliffordAlgebra& algebra, const RealVector& a);

Density element_density(const CliffordAlgebra& algebra, const CliffordElement& rho);

double element_entropy(const CliffordAlgebra& algebra, const CliffordElement& rho);

/// Random self-adjoint element of c(V) with coefficient norm about `scale`.
CliffordElement random_subalgebra_hermitian(const CliffordAlgebra& algebra,
                                            const SubspaceSpec& V, Rng& rng, double scale = 1.0);

/// tau exp(sum H_j) <= prod (tau e^{p_j H_j})^{1/p_j} for H_j in c(V_j);
/// pass requires the frame condition; a violated condition is flagged rather
/// than asserted (the necessity search relies on this).
VerificationReport verify_clifford_bl(const CliffordAlgebra& algebra, const FrameSpec& frame,
                                      const std::vector<CliffordElement>& hamiltonians,
                                      double tol = 1e-9);

}  // namespace ncbl

#endif
