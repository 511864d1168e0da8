#include "ncbl/gaussian.hpp"

#include <cmath>

namespace ncbl {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double gamma1(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// composite Simpson with an even number of panels
double simpson(const std::function<double(double)>& f, double lo, double hi, double h) {
    int panels = static_cast<int>(std::ceil((hi - lo) / h));
    if (panels % 2) ++panels;
    const double step = (hi - lo) / panels;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i)
        acc += f(lo + i * step) * (i % 2 ? 4.0 : 2.0);
    return acc * step / 3.0;
}

}  // namespace

double gaussian_entropy(const LinearExponentialDensity& rho) {
    return -0.5 * rho.b.squaredNorm();
}

LinearExponentialDensity gaussian_marginal(const LinearExponentialDensity& rho,
                                           const SubspaceSpec& V) {
    if (V.ambient() != rho.dim()) throw NumericalError("gaussian_marginal: dimension mismatch");
    return {V.project(rho.b)};
}

LinearExponentialDensity mehler_action(const LinearExponentialDensity& rho, double t) {
    if (t < 0.0) throw NumericalError("mehler_action: t must be >= 0");
    return {std::exp(-t) * rho.b};
}

double gaussian_entropy_production(const LinearExponentialDensity& rho) {
    return rho.b.squaredNorm();
}

VerificationReport verify_gaussian_sa(const RealVector& b, const FrameSpec& frame, double tol) {
    LinearExponentialDensity rho{b};
    double deficit = -gaussian_entropy(rho);
    for (int j = 0; j < frame.size(); ++j)
        deficit += gaussian_entropy(gaussian_marginal(rho, frame.subspace(j))) / frame.exponent(j);

    FrameCondition cond = check_frame_condition(frame);
    VerificationReport rep;
    rep.setting = "gaussian-sa";
    rep.lhs = gaussian_entropy(rho);
    rep.rhs = deficit + rep.lhs;
    rep.deficit = deficit;
    rep.tolerance = tol;
    rep.condition_violated = !cond.admissible;
    rep.pass = cond.admissible ? deficit >= -tol : true;
    return rep;
}

double gauss_quad_1d(const std::function<double(double)>& f, double L, double h) {
    return simpson([&](double x) { return f(x) * gamma1(x); }, -L, L, h);
}

double gauss_quad_2d(const std::function<double(double, double)>& f, double L, double h) {
    return simpson(
        [&](double x) {
            return simpson([&](double y) { return f(x, y) * gamma1(y); }, -L, L, h) * gamma1(x);
        },
        -L, L, h);
}

VerificationReport verify_gaussian_bl_quadrature(const FrameSpec& frame,
                                                 const std::vector<RealVector>& coefficients,
                                                 double tol) {
    const int n = frame.ambient();
    if (n > 2) throw NumericalError("verify_gaussian_bl_quadrature: ambient dimension must be <= 2");
    if (static_cast<int>(coefficients.size()) != frame.size())
        throw NumericalError("verify_gaussian_bl_quadrature: one coefficient vector per subspace");

    // quadrature mass sanity on the reference measure
    double mass = n == 1 ? gauss_quad_1d([](double) { return 1.0; })
                         : gauss_quad_2d([](double, double) { return 1.0; });
    if (std::abs(mass - 1.0) > 1e-6)
        throw NumericalError("verify_gaussian_bl_quadrature: quadrature mass error");

    // closed forms via E[e^{c.X}] = e^{|c|^2/2}
    RealVector combo = RealVector::Zero(n);
    double rhs_closed_log = 0.0;
    for (int j = 0; j < frame.size(); ++j) {
        const SubspaceSpec& V = frame.subspace(j);
        const RealVector& c = coefficients[static_cast<std::size_t>(j)];
        if (c.size() != V.dim())
            throw NumericalError("verify_gaussian_bl_quadrature: coefficient length mismatch");
        combo += V.basis() * c;
        double pj = frame.exponent(j);
        rhs_closed_log += 0.5 * pj * c.squaredNorm();  // (1/p) * |p c|^2/2
    }
    double lhs_closed = std::exp(0.5 * combo.squaredNorm());
    double rhs_closed = std::exp(rhs_closed_log);

    // quadrature lhs
    auto integrand = [&](const RealVector& x) {
        double acc = 0.0;
        for (int j = 0; j < frame.size(); ++j) {
            const SubspaceSpec& V = frame.subspace(j);
            acc += coefficients[static_cast<std::size_t>(j)].dot(V.basis().transpose() * x);
        }
        return std::exp(acc);
    };
    double lhs_quad;
    if (n == 1) {
        lhs_quad = gauss_quad_1d([&](double x) {
            RealVector v(1);
            v << x;
            return integrand(v);
        });
    } else {
        lhs_quad = gauss_quad_2d([&](double x, double y) {
            RealVector v(2);
            v << x, y;
            return integrand(v);
        });
    }

    // quadrature rhs factors
    double rhs_quad = 1.0;
    for (int j = 0; j < frame.size(); ++j) {
        const SubspaceSpec& V = frame.subspace(j);
        const RealVector& c = coefficients[static_cast<std::size_t>(j)];
        double pj = frame.exponent(j);
        double integral;
        if (V.dim() == 1) {
            integral = gauss_quad_1d([&](double y) { return std::exp(pj * c[0] * y); });
        } else {
            integral = gauss_quad_2d(
                [&](double y0, double y1) { return std::exp(pj * (c[0] * y0 + c[1] * y1)); });
        }
        rhs_quad *= std::pow(integral, 1.0 / pj);
    }

    if (std::abs(lhs_quad - lhs_closed) > 1e-8 * std::max(1.0, lhs_closed) ||
        std::abs(rhs_quad - rhs_closed) > 1e-8 * std::max(1.0, rhs_closed))
        throw NumericalError("verify_gaussian_bl_quadrature: quadrature/closed-form mismatch");

    FrameCondition cond = check_frame_condition(frame);
    VerificationReport rep;
    rep.setting = "gaussian-bl";
    rep.lhs = lhs_quad;
    rep.rhs = rhs_quad;
    rep.deficit = std::log(rhs_quad) - std::log(lhs_quad);
    rep.tolerance = tol;
    rep.condition_violated = !cond.admissible;
    rep.pass = cond.admissible ? lhs_quad <= rhs_quad * (1.0 + tol) : true;
    return rep;
}

}  // namespace ncbl
