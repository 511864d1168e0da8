#ifndef NCBL_SEARCH_HPP
#define NCBL_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "ncbl/clifford.hpp"
#include "ncbl/frames.hpp"
#include "ncbl/report.hpp"
#include "ncbl/rng.hpp"
#include "ncbl/tensor.hpp"

namespace ncbl {

struct SearchConfig {
    std::uint64_t seed = 42;
    int budget = 200;    // coordinate-sweep iterations per restart
    int restarts = 8;
    double violation_threshold = -1e-7;
    double radius = 3.0;  // parameter box half-width
};

struct SearchResult {
    RealVector best_params;
    double best_deficit = 0.0;
    bool violation_found = false;
    std::vector<double> trace;  // best deficit after each restart, in restart order
};

/// Derivative-free minimization of a deficit functional over R^dim:
/// random-restart coordinate descent with shrinking steps. Restarts run in
/// parallel and are merged in restart order, so the result is deterministic
/// given (seed, budget, dim).
SearchResult minimize_deficit(const std::function<double(const RealVector&)>& deficit, int dim,
                              const SearchConfig& config,
                              const std::vector<RealVector>& warm_starts = {});

/// Searches for a violation of the tensor inequality at exponent q over
/// Hermitian tuples H_j with ||H_j||_F <= config.radius.
SearchResult search_tensor(const FactorSystem& system, const CoverSpec& cover, double q,
                           const SearchConfig& config);

/// Searches over densities rho_a = I + a.Q for a violation of the Clifford
/// subadditivity deficit; warm-started along the most negative slack
/// eigendirection (scaled witnesses rho_{ta}).
SearchResult search_clifford(const CliffordAlgebra& algebra, const FrameSpec& frame,
                             const SearchConfig& config);

/// Searches over b for a negative Gaussian deficit b.Slack.b / 2.
SearchResult search_gaussian(const FrameSpec& frame, const SearchConfig& config);

struct ScalingRow {
    std::vector<Eigen::Index> dims;
    double ratio;
};

struct ScalingReport {
    double ratio = 1.0;               // at the given dims
    std::vector<ScalingRow> schedule; // dims-doubling table
};

/// The H_j = 0 instance at exponent q > p: exact ratio prod_j d_j^{1 - p(j)/q},
/// tabulated along a dims-doubling schedule to exhibit unboundedness.
ScalingReport scaling_counterexample(double q, const CoverSpec& cover,
                                     const std::vector<Eigen::Index>& dims, int doublings = 3);

/// Confirms the constant 1 is attained: deficit at the zero parameter point is
/// exactly 0 and the searched minimum stays above -tol.
VerificationReport tightness_probe(const std::string& setting_name,
                                   const std::function<double(const RealVector&)>& deficit,
                                   int dim, const SearchConfig& config, double tol = 1e-9);

}  // namespace ncbl

#endif
