#ifndef NCBL_RANDOM_ENSEMBLES_HPP
#define NCBL_RANDOM_ENSEMBLES_HPP

#include "ncbl/linalg.hpp"
#include "ncbl/rng.hpp"

namespace ncbl {

/// GUE-style Hermitian matrix rescaled to Frobenius norm `fro_norm`.
HermitianOperator random_hermitian(Eigen::Index d, Rng& rng, double fro_norm = 1.0);

/// Full-rank random density: normalized G G^dagger + eps * I, G Ginibre.
Density random_density(Eigen::Index d, Rng& rng, TraceFunctional::Kind kind,
                       double floor_eps = 0.0);

/// Rank-deficient random density with the given rank.
Density random_density_rank(Eigen::Index d, Eigen::Index rank, Rng& rng,
                            TraceFunctional::Kind kind);

/// Haar-ish random unit vector in R^n.
RealVector random_unit_vector(Eigen::Index n, Rng& rng);

}  // namespace ncbl

#endif
