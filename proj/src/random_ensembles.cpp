#include "ncbl/random_ensembles.hpp"

namespace ncbl {

HermitianOperator random_hermitian(Eigen::Index d, Rng& rng, double fro_norm) {
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            m(i, j) = Cplx(rng.normal(), rng.normal());
    Matrix h = 0.5 * (m + m.adjoint().eval());
    double n = h.norm();
    if (n > 0.0) h *= fro_norm / n;
    return HermitianOperator(h);
}

Density random_density(Eigen::Index d, Rng& rng, TraceFunctional::Kind kind, double floor_eps) {
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            g(i, j) = Cplx(rng.normal(), rng.normal());
    Matrix p = g * g.adjoint();
    p += floor_eps * p.trace().real() * Matrix::Identity(d, d);
    TraceFunctional fn(kind, d);
    double mass = fn(p);
    return Density(HermitianOperator(p / mass), fn);
}

Density random_density_rank(Eigen::Index d, Eigen::Index rank, Rng& rng,
                            TraceFunctional::Kind kind) {
    Matrix g(d, rank);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < rank; ++j)
            g(i, j) = Cplx(rng.normal(), rng.normal());
    Matrix p = g * g.adjoint();
    TraceFunctional fn(kind, d);
    double mass = fn(p);
    return Density(HermitianOperator(p / mass), fn);
}

RealVector random_unit_vector(Eigen::Index n, Rng& rng) {
    RealVector v(n);
    double norm = 0.0;
    do {
        for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
        norm = v.norm();
    } while (norm < 1e-12);
    return v / norm;
}

}  // namespace ncbl
