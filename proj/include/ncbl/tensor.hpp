#ifndef NCBL_TENSOR_HPP
#define NCBL_TENSOR_HPP

#include <vector>

#include "ncbl/linalg.hpp"
#include "ncbl/report.hpp"

namespace ncbl {

/// Tensor product K = H_1 x ... x H_n with factor dimensions d_j >= 2.
/// Factor 0 is the slowest-varying index (canonical Kronecker order).
class FactorSystem {
public:
    explicit FactorSystem(std::vector<Eigen::Index> dims);

    int factors() const { return static_cast<int>(dims_.size()); }
    Eigen::Index dim(int j) const { return dims_[static_cast<std::size_t>(j)]; }
    const std::vector<Eigen::Index>& dims() const { return dims_; }
    Eigen::Index total_dim() const { return total_; }

private:
    std::vector<Eigen::Index> dims_;
    Eigen::Index total_;
};

/// Nonempty subset of factor indices {0,...,n-1}; stored sorted, deduplicated.
class IndexSubset {
public:
    explicit IndexSubset(std::vector<int> members);

    const std::vector<int>& members() const { return members_; }
    bool contains(int i) const;
    int size() const { return static_cast<int>(members_.size()); }

    static IndexSubset set_union(const IndexSubset& a, const IndexSubset& b);
    /// Empty result is signalled via the bool; IndexSubset itself is nonempty.
    static bool set_intersection(const IndexSubset& a, const IndexSubset& b,
                                 std::vector<int>& out);

private:
    std::vector<int> members_;
};

struct CoverSpec {
    std::vector<IndexSubset> subsets;
};

struct Multiplicities {
    std::vector<int> per_index;  // p(i) = #{j : i in J_j}
    int min = 0;                 // p
};

Multiplicities min_multiplicity(const CoverSpec& cover, int n);

Eigen::Index subset_dim(const FactorSystem& system, const IndexSubset& J);

/// phi_J: acts as H_J on the factors in J and as identity elsewhere, with
/// tensor slots permuted back to canonical factor order.
HermitianOperator embed(const FactorSystem& system, const IndexSubset& J,
                        const HermitianOperator& H_J);

/// Same slot bookkeeping for non-Hermitian probes (tests use this).
Matrix embed_matrix(const FactorSystem& system, const IndexSubset& J, const Matrix& A);

Matrix partial_trace_matrix(const FactorSystem& system, const IndexSubset& J, const Matrix& rho);

Density partial_trace(const FactorSystem& system, const IndexSubset& J, const Density& rho);

/// Theorem-1.3-style check: Tr exp(sum phi_j(H_j)) <= prod (Tr_j e^{q H_j})^{1/q}.
/// lhs/rhs are reported in linear scale, deficit in log scale.
VerificationReport verify_tensor_bl(const FactorSystem& system, const CoverSpec& cover,
                                    const std::vector<HermitianOperator>& hamiltonians,
                                    double q, double tol = 1e-9);

/// S(rho_J) + S(rho_K) - S(rho_{J u K}) - S(rho_{J n K}) >= -tol; the
/// intersection term is dropped when J and K are disjoint.
VerificationReport verify_ssa(const FactorSystem& system, const Density& rho,
                              const IndexSubset& J, const IndexSubset& K, double tol = 1e-9);

/// (1/p) sum_j S(rho_{J_j}) - S(rho) >= -tol.
VerificationReport verify_entropy_combination(const FactorSystem& system, const Density& rho,
                                              const CoverSpec& cover, double tol = 1e-9);

struct GoldenThompson {
    double lhs = 0.0;  // Tr e^{H1+H2}
    double rhs = 0.0;  // Tr(e^{H1} e^{H2})
    double gap = 0.0;  // rhs - lhs
};

GoldenThompson golden_thompson_gap(const HermitianOperator& H1, const HermitianOperator& H2);

}  // namespace ncbl

#endif
