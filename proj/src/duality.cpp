#include "ncbl/duality.hpp"

#include <cmath>

#include "ncbl/random_ensembles.hpp"

namespace ncbl {

namespace {

class TensorSetting final : public DualitySetting {
public:
    TensorSetting(FactorSystem system, CoverSpec cover, std::vector<double> exponents)
        : system_(std::move(system)), cover_(std::move(cover)), exponents_(std::move(exponents)) {
        if (cover_.subsets.size() != exponents_.size())
            throw NumericalError("TensorSetting: one exponent per cover subset");
        for (double p : exponents_)
            if (p < 1.0) throw NumericalError("TensorSetting: exponents must be >= 1");
    }

    std::string name() const override { return "tensor"; }
    Eigen::Index ambient_dim() const override { return system_.total_dim(); }
    TraceFunctional ambient_functional() const override {
        return TraceFunctional::trace(system_.total_dim());
    }
    int factors() const override { return static_cast<int>(cover_.subsets.size()); }
    double exponent(int j) const override { return exponents_[static_cast<std::size_t>(j)]; }
    Eigen::Index factor_dim(int j) const override {
        return subset_dim(system_, cover_.subsets[static_cast<std::size_t>(j)]);
    }
    TraceFunctional factor_functional(int j) const override {
        return TraceFunctional::trace(factor_dim(j));
    }
    Matrix embed_factor(int j, const Matrix& A) const override {
        return embed_matrix(system_, cover_.subsets[static_cast<std::size_t>(j)], A);
    }
    Matrix induce(int j, const Matrix& rho) const override {
        return partial_trace_matrix(system_, cover_.subsets[static_cast<std::size_t>(j)], rho);
    }
    HermitianOperator random_factor_hermitian(int j, Rng& rng, double scale) const override {
        return random_hermitian(factor_dim(j), rng, scale);
    }
    Density random_ambient_density(Rng& rng) const override {
        return random_density(system_.total_dim(), rng, TraceFunctional::Kind::Trace, 1e-3);
    }

private:
    FactorSystem system_;
    CoverSpec cover_;
    std::vector<double> exponents_;
};

class CliffordSetting final : public DualitySetting {
public:
    CliffordSetting(std::shared_ptr<CliffordAlgebra> algebra, FrameSpec frame)
        : algebra_(std::move(algebra)), frame_(std::move(frame)) {
        if (frame_.ambient() != algebra_->generators())
            throw NumericalError("CliffordSetting: frame/algebra dimension mismatch");
    }

    std::string name() const override { return "clifford"; }
    Eigen::Index ambient_dim() const override { return algebra_->matrix_dim(); }
    TraceFunctional ambient_functional() const override {
        return TraceFunctional::normalized(algebra_->matrix_dim());
    }
    int factors() const override { return frame_.size(); }
    double exponent(int j) const override { return frame_.exponent(j); }
    Eigen::Index factor_dim(int j) const override { return algebra_->matrix_dim(); }
    TraceFunctional factor_functional(int) const override { return ambient_functional(); }
    Matrix embed_factor(int, const Matrix& A) const override { return A; }
    Matrix induce(int j, const Matrix& rho) const override {
        CliffordElement e = algebra_->from_matrix(rho);
        return algebra_->to_matrix(conditional_expectation(e, frame_.subspace(j)));
    }
    HermitianOperator random_factor_hermitian(int j, Rng& rng, double scale) const override {
        CliffordElement h =
            random_subalgebra_hermitian(*algebra_, frame_.subspace(j), rng, scale);
        return HermitianOperator(algebra_->to_matrix(h));
    }
    Density random_ambient_density(Rng& rng) const override {
        // full-rank density inside the Clifford algebra (the full matrix algebra
        // for even gradings; we project a random PSD matrix onto the algebra)
        Matrix raw = random_density(algebra_->matrix_dim(), rng,
                                    TraceFunctional::Kind::NormalizedTrace, 1e-2)
                         .mat();
        // to_matrix(from_matrix(.)) projects onto span{Q^alpha}; for the full
        // Clifford algebra on 2^n this span is the whole matrix algebra, so
        // this is exact up to rounding.
        Matrix proj = algebra_->to_matrix(algebra_->from_matrix(raw));
        TraceFunctional fn = ambient_functional();
        return Density(HermitianOperator(proj / fn(proj)), fn);
    }

private:
    std::shared_ptr<CliffordAlgebra> algebra_;
    FrameSpec frame_;
};

double lambda_pair(const TraceFunctional& fn, const Matrix& A, const Matrix& B) {
    return fn((A * B).eval());
}

}  // namespace

std::unique_ptr<DualitySetting> make_tensor_setting(FactorSystem system, CoverSpec cover,
                                                    std::vector<double> exponents) {
    return std::make_unique<TensorSetting>(std::move(system), std::move(cover),
                                           std::move(exponents));
}

std::unique_ptr<DualitySetting> make_clifford_setting(std::shared_ptr<CliffordAlgebra> algebra,
                                                      FrameSpec frame) {
    return std::make_unique<CliffordSetting>(std::move(algebra), std::move(frame));
}

LegendreReport legendre_entropy_check(const Density& A, Rng& rng, int trial_count,
                                      int ascent_budget) {
    const TraceFunctional fn = A.functional();
    const Eigen::Index d = A.dim();
    auto objective = [&](const HermitianOperator& H) {
        return lambda_pair(fn, A.mat(), H.mat()) - log_trace_exp(H, fn);
    };

    LegendreReport rep;
    rep.entropy = entropy(A);
    Spectrum s = spectral_decompose(A.op());
    rep.full_rank = s.eigenvalues.minCoeff() > 1e-12 * s.eigenvalues.maxCoeff();

    const double bound = -rep.entropy;
    rep.best_sampled = -std::numeric_limits<double>::infinity();
    rep.bound_held = true;
    for (int t = 0; t < trial_count; ++t) {
        HermitianOperator H = random_hermitian(d, rng, 1.0 + 4.0 * rng.uniform());
        double v = objective(H);
        rep.best_sampled = std::max(rep.best_sampled, v);
        if (v > bound + 1e-9) rep.bound_held = false;
    }

    if (rep.full_rank) {
        HermitianOperator closed = matrix_log(A);
        rep.at_closed_form = objective(closed);

        // projected gradient ascent with backtracking, 3 random restarts
        double best = -std::numeric_limits<double>::infinity();
        for (int restart = 0; restart < 3; ++restart) {
            HermitianOperator H = random_hermitian(d, rng, 1.0);
            double fH = objective(H);
            double step = 1.0;
            for (int it = 0; it < ascent_budget; ++it) {
                Matrix expH = matrix_exp(H).mat();
                Matrix gibbs = expH / fn(expH);
                Matrix grad = A.mat() - gibbs;
                if (grad.norm() < 1e-12) break;
                bool moved = false;
                for (int bt = 0; bt < 40; ++bt) {
                    HermitianOperator cand(H.mat() + step * grad);
                    double fc = objective(cand);
                    if (fc > fH) {
                        H = cand;
                        fH = fc;
                        step *= 1.5;
                        moved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if (!moved) break;
            }
            best = std::max(best, fH);
        }
        rep.ascent_value = best;
        rep.attained = std::abs(rep.at_closed_form - bound) <= 1e-9 * std::max(1.0, std::abs(bound)) &&
                       std::abs(rep.ascent_value - bound) <= 1e-6 * std::max(1.0, std::abs(bound));
    }
    return rep;
}

LogPartitionReport log_partition_check(const HermitianOperator& H, const TraceFunctional& fn,
                                       Rng& rng, int trial_count, int ascent_budget) {
    const Eigen::Index d = H.dim();
    LogPartitionReport rep;
    rep.log_partition = log_trace_exp(H, fn);

    auto objective = [&](const Density& A) {
        return lambda_pair(fn, A.mat(), H.mat()) + entropy(A);
    };

    rep.best_sampled = -std::numeric_limits<double>::infinity();
    rep.bound_held = true;
    for (int t = 0; t < trial_count; ++t) {
        Density A = random_density(d, rng, fn.kind());
        double v = objective(A);
        rep.best_sampled = std::max(rep.best_sampled, v);
        if (v > rep.log_partition + 1e-9) rep.bound_held = false;
    }

    Matrix expH = matrix_exp(H).mat();
    Matrix gibbs = expH / fn(expH);
    rep.at_closed_form = objective(Density(HermitianOperator(gibbs), fn));

    // fixed-point ascent A <- normalize exp((ln A + H)/2); contracts to the Gibbs density
    Density A = random_density(d, rng, fn.kind(), 1e-2);
    for (int it = 0; it < std::min(ascent_budget, 200); ++it) {
        Matrix logA = matrix_log(A).mat();
        HermitianOperator mix(0.5 * (logA + H.mat()));
        Matrix e = matrix_exp(mix).mat();
        A = Density(HermitianOperator(e / fn(e)), fn);
    }
    rep.maximizer_residual = (A.mat() - gibbs).norm();
    rep.attained = std::abs(rep.at_closed_form - rep.log_partition) <=
                       1e-9 * std::max(1.0, std::abs(rep.log_partition)) &&
                   rep.maximizer_residual <= 1e-6;
    return rep;
}

double subadditivity_deficit(const DualitySetting& setting, const Density& rho,
                             double log_constant) {
    double acc = -entropy(rho) + log_constant;
    for (int j = 0; j < setting.factors(); ++j) {
        Matrix rj = setting.induce(j, rho.mat());
        Density dj(HermitianOperator(rj), setting.factor_functional(j));
        acc += entropy(dj) / setting.exponent(j);
    }
    return acc;
}

VerificationReport verify_duality_equivalence(const DualitySetting& setting, Rng& rng,
                                              int samples, double tol) {
    const TraceFunctional fn = setting.ambient_functional();
    const int N = setting.factors();
    double worst_link = std::numeric_limits<double>::infinity();  // min over inequality links
    double worst_eq = 0.0;                                        // max abs equality error
    bool ok = true;

    for (int s = 0; s < samples; ++s) {
        // ---- direction (i): sampled H_j, density rho* = exp(sum phi_j H_j)/Z
        std::vector<HermitianOperator> hs;
        Matrix total = Matrix::Zero(setting.ambient_dim(), setting.ambient_dim());
        for (int j = 0; j < N; ++j) {
            hs.push_back(setting.random_factor_hermitian(j, rng, 1.0));
            total += setting.embed_factor(j, hs.back().mat());
        }
        HermitianOperator sumH(total);
        double logZ = log_trace_exp(sumH, fn);
        Matrix rho_star = matrix_exp(sumH).mat();
        rho_star /= fn(rho_star);
        Density rs(HermitianOperator(rho_star), fn);

        // link 1: ln Z = lambda(rho* sum phi H) + S(rho*)
        double link1 = lambda_pair(fn, rs.mat(), sumH.mat()) + entropy(rs);
        worst_eq = std::max(worst_eq, std::abs(link1 - logZ));

        // link 2: lambda(rho* sum phi H) = sum_j lambda_j(rho*_j H_j)
        double lhs2 = lambda_pair(fn, rs.mat(), sumH.mat());
        double rhs2 = 0.0;
        std::vector<Density> induced;
        for (int j = 0; j < N; ++j) {
            Density dj(HermitianOperator(setting.induce(j, rs.mat())), setting.factor_functional(j));
            rhs2 += lambda_pair(setting.factor_functional(j), dj.mat(), hs[static_cast<std::size_t>(j)].mat());
            induced.push_back(std::move(dj));
        }
        worst_eq = std::max(worst_eq, std::abs(lhs2 - rhs2));

        // link 3 (genen): sum lambda_j(rho*_j H_j) + S(rho*) <= sum (1/p_j)[lambda_j(rho*_j p_j H_j) + S(rho*_j)]
        double rhs3 = 0.0;
        for (int j = 0; j < N; ++j) {
            double pj = setting.exponent(j);
            rhs3 += (lambda_pair(setting.factor_functional(j), induced[static_cast<std::size_t>(j)].mat(),
                                 (pj * hs[static_cast<std::size_t>(j)].mat()).eval()) +
                     entropy(induced[static_cast<std::size_t>(j)])) /
                    pj;
        }
        worst_link = std::min(worst_link, rhs3 - (rhs2 + entropy(rs)));

        // link 4 (fortwo): sum (1/p_j)[...] <= sum (1/p_j) ln lambda_j e^{p_j H_j}
        double rhs4 = 0.0;
        for (int j = 0; j < N; ++j) {
            double pj = setting.exponent(j);
            HermitianOperator pH(pj * hs[static_cast<std::size_t>(j)].mat());
            rhs4 += log_trace_exp(pH, setting.factor_functional(j)) / pj;
        }
        worst_link = std::min(worst_link, rhs4 - rhs3);

        // ---- direction (ii): sampled rho, extremal H_j = (1/p_j) ln rho_j
        Density rho = setting.random_ambient_density(rng);
        double sub_deficit = subadditivity_deficit(setting, rho);
        double bl_deficit = 0.0;
        Matrix total2 = Matrix::Zero(setting.ambient_dim(), setting.ambient_dim());
        for (int j = 0; j < N; ++j) {
            double pj = setting.exponent(j);
            Density dj(HermitianOperator(setting.induce(j, rho.mat())), setting.factor_functional(j));
            HermitianOperator Hj(matrix_log(dj).mat() / pj);
            total2 += setting.embed_factor(j, Hj.mat());
            // at the maximizer: lambda_j(rho_j p_j H_j) - ln lambda_j e^{p_j H_j} = -S(rho_j)
            HermitianOperator pH(pj * Hj.mat());
            double eq = lambda_pair(setting.factor_functional(j), dj.mat(), pH.mat()) -
                        log_trace_exp(pH, setting.factor_functional(j)) + entropy(dj);
            worst_eq = std::max(worst_eq, std::abs(eq));
            bl_deficit += log_trace_exp(pH, setting.factor_functional(j)) / pj;
        }
        bl_deficit -= log_trace_exp(HermitianOperator(total2), fn);
        // subadditivity deficit dominates the B-L deficit at this extremal choice
        worst_link = std::min(worst_link, sub_deficit - bl_deficit);
        worst_link = std::min(worst_link, bl_deficit);  // the B-L inequality itself
    }

    if (worst_eq > tol || worst_link < -tol) ok = false;

    VerificationReport rep;
    rep.setting = "duality-equivalence(" + setting.name() + ")";
    rep.lhs = worst_eq;
    rep.rhs = worst_link;
    rep.deficit = worst_link;
    rep.tolerance = tol;
    rep.pass = ok;
    return rep;
}

}  // namespace ncbl
