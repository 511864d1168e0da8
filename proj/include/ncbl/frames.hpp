#ifndef NCBL_FRAMES_HPP
#define NCBL_FRAMES_HPP

#include <cstdint>
#include <vector>

#include "ncbl/linalg.hpp"
#include "ncbl/report.hpp"
#include "ncbl/rng.hpp"

namespace ncbl {

/// Subspace of R^n given by an orthonormal basis (columns).
class SubspaceSpec {
public:
    SubspaceSpec(int ambient, RealMatrix basis);

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const RealMatrix& basis() const { return basis_; }
    RealMatrix projection() const { return basis_ * basis_.transpose(); }
    RealVector project(const RealVector& x) const { return basis_ * (basis_.transpose() * x); }

    static SubspaceSpec full(int n);
    static SubspaceSpec span(const RealVector& u);  // normalizes u
    /// Gram-Schmidt on the columns; throws if they are dependent.
    static SubspaceSpec orthonormalized(int ambient, const RealMatrix& raw);
    static SubspaceSpec random(int ambient, int dim, Rng& rng);

private:
    int ambient_;
    RealMatrix basis_;
};

/// Subspaces V_j with exponents p_j >= 1; slack = I - sum (1/p_j) P_j.
class FrameSpec {
public:
    FrameSpec(int ambient, std::vector<std::pair<SubspaceSpec, double>> parts);

    int ambient() const { return ambient_; }
    int size() const { return static_cast<int>(parts_.size()); }
    const SubspaceSpec& subspace(int j) const { return parts_[static_cast<std::size_t>(j)].first; }
    double exponent(int j) const { return parts_[static_cast<std::size_t>(j)].second; }

    RealMatrix slack() const;

private:
    int ambient_;
    std::vector<std::pair<SubspaceSpec, double>> parts_;
};

struct FrameCondition {
    bool admissible = false;
    double min_eigenvalue = 0.0;
    RealVector witness;  // eigenvector of the minimal slack eigenvalue
};

FrameCondition check_frame_condition(const FrameSpec& frame, double tol = 1e-10);

/// N one-dimensional subspaces with sum (1/p_j) u_j u_j^T = I (tight frame),
/// built from random unit vectors by fixed-point rescaling. Requires N >= n.
FrameSpec random_tight_frame(int n, int N, std::uint64_t seed);

/// psi(x) = [(1+x)ln(1+x) + (1-x)ln(1-x)]/2 on [-1,1], +inf outside.
double psi(double x);
/// psi'(x) = arctanh(x).
double psi_prime(double x);
/// Legendre transform of psi: psi*(y) = ln cosh(y).
double psi_star(double y);

/// psi(|a|) - sum (1/p_j) psi(|P_j a|) >= 0 for admissible frames, plus the
/// intermediate rational inequality |a|^2/(1-|a|^2) >= sum (1/p_j)|P_j a|^2/(1-|P_j a|^2).
VerificationReport verify_psi_subadditivity(const RealVector& a, const FrameSpec& frame,
                                            double tol = 1e-12);

/// ln cosh|sum b_j u_j| <= sum (1/p_j) ln cosh(p_j b_j) for tight 1-dim frames.
VerificationReport verify_cosh_inequality(const RealVector& b, const FrameSpec& frame,
                                          double tol = 1e-12);

}  // namespace ncbl

#endif
