#include "ncbl/search.hpp"

#include <cmath>
#include <future>

namespace ncbl {

namespace {

// packs dim*dim real parameters into a Hermitian matrix: diagonal first, then
// (re, im) for each upper-triangular entry
HermitianOperator unpack_hermitian(const RealVector& params, Eigen::Index offset,
                                   Eigen::Index dim) {
    Matrix H = Matrix::Zero(dim, dim);
    Eigen::Index k = offset;
    for (Eigen::Index i = 0; i < dim; ++i) H(i, i) = params[k++];
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = i + 1; j < dim; ++j) {
            double re = params[k++];
            double im = params[k++];
            H(i, j) = Cplx(re, im);
            H(j, i) = Cplx(re, -im);
        }
    return HermitianOperator(H);
}

SearchResult run_restart(const std::function<double(const RealVector&)>& deficit, int dim,
                         const SearchConfig& config, int restart,
                         const RealVector* warm_start) {
    Rng rng(config.seed, static_cast<std::uint64_t>(restart));
    RealVector x(dim);
    if (warm_start) {
        x = *warm_start;
    } else {
        for (int i = 0; i < dim; ++i) x[i] = config.radius * (2.0 * rng.uniform() - 1.0);
    }
    double fx = deficit(x);
    double step = 0.5 * config.radius;
    for (int it = 0; it < config.budget && step > 1e-12; ++it) {
        bool improved = false;
        for (int i = 0; i < dim; ++i) {
            for (double s : {step, -step}) {
                RealVector y = x;
                y[i] = std::clamp(x[i] + s, -config.radius, config.radius);
                double fy = deficit(y);
                if (fy < fx) {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    SearchResult r;
    r.best_params = x;
    r.best_deficit = fx;
    return r;
}

}  // namespace

SearchResult minimize_deficit(const std::function<double(const RealVector&)>& deficit, int dim,
                              const SearchConfig& config,
                              const std::vector<RealVector>& warm_starts) {
    const int total = config.restarts + static_cast<int>(warm_starts.size());
    std::vector<std::future<SearchResult>> futures;
    futures.reserve(static_cast<std::size_t>(total));
    for (int r = 0; r < total; ++r) {
        const RealVector* warm =
            r < static_cast<int>(warm_starts.size()) ? &warm_starts[static_cast<std::size_t>(r)]
                                                     : nullptr;
        futures.push_back(std::async(std::launch::async, [&, r, warm] {
            return run_restart(deficit, dim, config, r, warm);
        }));
    }
    SearchResult best;
    best.best_deficit = std::numeric_limits<double>::infinity();
    for (auto& f : futures) {
        SearchResult r = f.get();
        best.trace.push_back(r.best_deficit);
        if (r.best_deficit < best.best_deficit) {
            best.best_deficit = r.best_deficit;
            best.best_params = r.best_params;
        }
    }
    best.violation_found = best.best_deficit < config.violation_threshold;
    return best;
}

SearchResult search_tensor(const FactorSystem& system, const CoverSpec& cover, double q,
                           const SearchConfig& config) {
    std::vector<Eigen::Index> hdims;
    int total_params = 0;
    for (const IndexSubset& J : cover.subsets) {
        Eigen::Index d = subset_dim(system, J);
        hdims.push_back(d);
        total_params += static_cast<int>(d * d);
    }
    auto deficit = [&](const RealVector& params) {
        std::vector<HermitianOperator> hs;
        Eigen::Index off = 0;
        for (Eigen::Index d : hdims) {
            hs.push_back(unpack_hermitian(params, off, d));
            off += d * d;
        }
        return verify_tensor_bl(system, cover, hs, q).deficit;
    };
    std::vector<RealVector> warm{RealVector::Zero(total_params)};  // H_j = 0 baseline
    return minimize_deficit(deficit, total_params, config, warm);
}

SearchResult search_clifford(const CliffordAlgebra& algebra, const FrameSpec& frame,
                             const SearchConfig& config) {
    const int n = algebra.generators();
    auto deficit = [&](const RealVector& a) {
        double norm = a.norm();
        RealVector b = norm > 0.999 ? RealVector(0.999 / norm * a) : a;
        CliffordElement rho = rho_a(algebra, b);
        double acc = -element_entropy(algebra, rho);
        for (int j = 0; j < frame.size(); ++j)
            acc += element_entropy(algebra, conditional_expectation(rho, frame.subspace(j))) /
                   frame.exponent(j);
        return acc;
    };

    // warm starts rho_{ta} along the slack eigendirection with smallest eigenvalue
    FrameCondition cond = check_frame_condition(frame);
    std::vector<RealVector> warm;
    for (double t : {0.05, 0.2, 0.5, 0.9}) warm.push_back(t * cond.witness);

    SearchConfig c = config;
    c.radius = 0.999;
    return minimize_deficit(deficit, n, c, warm);
}

SearchResult search_gaussian(const FrameSpec& frame, const SearchConfig& config) {
    RealMatrix slack = frame.slack();
    auto deficit = [&](const RealVector& b) { return 0.5 * b.dot(slack * b); };
    FrameCondition cond = check_frame_condition(frame);
    std::vector<RealVector> warm{RealVector(config.radius * cond.witness)};
    return minimize_deficit(deficit, frame.ambient(), config, warm);
}

ScalingReport scaling_counterexample(double q, const CoverSpec& cover,
                                     const std::vector<Eigen::Index>& dims, int doublings) {
    const int n = static_cast<int>(dims.size());
    Multiplicities mult = min_multiplicity(cover, n);
    if (q <= static_cast<double>(mult.min))
        throw NumericalError("scaling_counterexample: requires q > p (no counterexample exists)");

    auto ratio_at = [&](const std::vector<Eigen::Index>& d) {
        double r = 1.0;
        for (int j = 0; j < n; ++j)
            r *= std::pow(static_cast<double>(d[static_cast<std::size_t>(j)]),
                          1.0 - static_cast<double>(mult.per_index[static_cast<std::size_t>(j)]) / q);
        return r;
    };

    ScalingReport rep;
    rep.ratio = ratio_at(dims);
    std::vector<Eigen::Index> d = dims;
    for (int k = 0; k <= doublings; ++k) {
        rep.schedule.push_back({d, ratio_at(d)});
        for (auto& v : d) v *= 2;
    }
    return rep;
}

VerificationReport tightness_probe(const std::string& setting_name,
                                   const std::function<double(const RealVector&)>& deficit,
                                   int dim, const SearchConfig& config, double tol) {
    double at_zero = deficit(RealVector::Zero(dim));
    SearchResult search = minimize_deficit(deficit, dim, config);

    VerificationReport rep;
    rep.setting = "tightness(" + setting_name + ")";
    rep.lhs = at_zero;
    rep.rhs = search.best_deficit;
    rep.deficit = search.best_deficit;
    rep.tolerance = tol;
    rep.pass = at_zero == 0.0 && search.best_deficit >= -tol;
    return rep;
}

}  // namespace ncbl
