#ifndef NCBL_GAUSSIAN_HPP
#define NCBL_GAUSSIAN_HPP

#include <functional>
#include <vector>

#include "ncbl/frames.hpp"
#include "ncbl/linalg.hpp"
#include "ncbl/report.hpp"

namespace ncbl {

/// rho_b(x) = exp(b.x - |b|^2/2), a unit-mass density against the standard
/// Gaussian gamma_n. The family is closed under marginals and the Mehler flow,
/// with exact parameter maps.
struct LinearExponentialDensity {
    RealVector b;

    int dim() const { return static_cast<int>(b.size()); }
    double operator()(const RealVector& x) const { return std::exp(b.dot(x) - 0.5 * b.squaredNorm()); }
};

/// S(rho_b) = -|b|^2/2.
double gaussian_entropy(const LinearExponentialDensity& rho);

/// Marginal onto V: parameter P_V b.
LinearExponentialDensity gaussian_marginal(const LinearExponentialDensity& rho,
                                           const SubspaceSpec& V);

/// e^{-tN} rho_b = rho_{e^{-t} b}.
LinearExponentialDensity mehler_action(const LinearExponentialDensity& rho, double t);

/// D(rho_b) = |b|^2.
double gaussian_entropy_production(const LinearExponentialDensity& rho);

/// Subadditivity deficit sum (1/p_j) S(rho_{V_j}) - S(rho) = b.Slack.b / 2;
/// pass iff the slack operator is PSD (admissible frame) or b certifies the
/// negative direction otherwise.
VerificationReport verify_gaussian_sa(const RealVector& b, const FrameSpec& frame,
                                      double tol = 1e-12);

/// Simpson quadrature of f against gamma_1 on [-L, L].
double gauss_quad_1d(const std::function<double(double)>& f, double L = 8.0, double h = 0.005);

/// Tensor-grid Simpson quadrature against gamma_2.
double gauss_quad_2d(const std::function<double(double, double)>& f, double L = 8.0,
                     double h = 0.0125);

/// Gaussian B-L check for the log-linear family f_j(y) = exp(c_j . y) on
/// 1- or 2-dimensional ambient space: quadrature lhs/rhs cross-checked
/// against the closed form E[e^{c.X}] = e^{|c|^2/2}.
VerificationReport verify_gaussian_bl_quadrature(const FrameSpec& frame,
                                                 const std::vector<RealVector>& coefficients,
                                                 double tol = 1e-6);

}  // namespace ncbl

#endif
