#include "ncbl/selftest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ncbl/clifford.hpp"
#include "ncbl/duality.hpp"
#include "ncbl/flow.hpp"
#include "ncbl/frames.hpp"
#include "ncbl/gaussian.hpp"
#include "ncbl/random_ensembles.hpp"
#include "ncbl/search.hpp"
#include "ncbl/tensor.hpp"

namespace ncbl {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

// p independent random partitions of {0..n-1}: every index is covered exactly
// p times, so the multiplicity is uniform
CoverSpec random_uniform_cover(int n, int p, Rng& rng) {
    CoverSpec cover;
    for (int rep = 0; rep < p; ++rep) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        std::size_t at = 0;
        while (at < perm.size()) {
            std::size_t len = 1 + rng.integer(0, perm.size() - at - 1);
            cover.subsets.emplace_back(
                std::vector<int>(perm.begin() + static_cast<long>(at),
                                 perm.begin() + static_cast<long>(at + len)));
            at += len;
        }
    }
    return cover;
}

CliffordElement random_positive_element(const CliffordAlgebra& algebra, Rng& rng,
                                        double scale = 1.0) {
    Eigen::VectorXcd c(algebra.basis_size());
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Cplx(rng.normal(), rng.normal());
    CliffordElement h(&algebra, std::move(c));
    h = (h + h.adjoint()) * Cplx(0.5, 0.0);
    h = h * Cplx(scale / std::max(1e-12, h.coefficients().norm()), 0.0);
    return algebra.from_matrix(matrix_exp(HermitianOperator(algebra.to_matrix(h))).mat());
}

CliffordElement random_density_element(const CliffordAlgebra& algebra, Rng& rng,
                                       double floor_eps = 1e-6) {
    return algebra.from_matrix(
        random_density(algebra.matrix_dim(), rng, TraceFunctional::Kind::NormalizedTrace, floor_eps)
            .mat());
}

FrameSpec random_admissible_frame(int n, int N, Rng& rng) {
    std::vector<std::pair<SubspaceSpec, double>> parts;
    for (int j = 0; j < N; ++j) {
        int dim = 1 + static_cast<int>(rng.integer(0, static_cast<std::uint64_t>(n - 1)));
        double pj = static_cast<double>(N) + static_cast<double>(rng.integer(0, 3));
        parts.emplace_back(SubspaceSpec::random(n, dim, rng), pj);
    }
    return FrameSpec(n, std::move(parts));
}

// ---- criteria -------------------------------------------------------------

CriterionResult car_exactness() {
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n) {
        CliffordAlgebra alg(n);
        std::vector<Matrix> q;
        for (int i = 0; i < n; ++i) q.push_back(alg.generator_matrix(i));
        Matrix I = Matrix::Identity(alg.matrix_dim(), alg.matrix_dim());
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Matrix anti = q[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j)] +
                              q[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(i)];
                if (i == j) anti -= 2.0 * I;
                worst = std::max(worst, anti.cwiseAbs().maxCoeff());
            }
    }
    return {1, "car-exactness", worst <= 1e-12, "max anticommutator residual " + fmt(worst)};
}

CriterionResult tau_consistency(std::uint64_t seed) {
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n) {
        CliffordAlgebra alg(n);
        for (int t = 0; t < 100; ++t) {
            Rng rng(seed, (static_cast<std::uint64_t>(n) << 32) + static_cast<std::uint64_t>(t));
            Eigen::VectorXcd c(alg.basis_size());
            for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Cplx(rng.normal(), rng.normal());
            CliffordElement e(&alg, std::move(c));
            Cplx via_tau = tau(e);
            Cplx via_trace = alg.to_matrix(e).trace() / static_cast<double>(alg.matrix_dim());
            worst = std::max(worst, std::abs(via_tau - via_trace));
        }
    }
    return {2, "tau-consistency", worst <= 1e-12, "max deviation " + fmt(worst)};
}

CriterionResult tensor_suite(std::uint64_t seed) {
    double worst = std::numeric_limits<double>::infinity();
    double worst_zero = 0.0;
    bool ok = true;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        Rng rng(seed, t);
        int n = 2 + static_cast<int>(rng.integer(0, 2));
        std::vector<Eigen::Index> dims;
        for (int i = 0; i < n; ++i) dims.push_back(2 + static_cast<Eigen::Index>(rng.integer(0, 1)));
        FactorSystem system(dims);
        int p = 1 + static_cast<int>(rng.integer(0, 2));
        CoverSpec cover = random_uniform_cover(n, p, rng);

        std::vector<HermitianOperator> hs;
        std::vector<HermitianOperator> zeros;
        for (const IndexSubset& J : cover.subsets) {
            Eigen::Index d = subset_dim(system, J);
            hs.push_back(random_hermitian(d, rng, 3.0 * rng.uniform()));
            zeros.push_back(HermitianOperator(Matrix::Zero(d, d)));
        }
        VerificationReport rep = verify_tensor_bl(system, cover, hs, static_cast<double>(p));
        worst = std::min(worst, rep.deficit);
        if (rep.deficit < -1e-9) ok = false;

        VerificationReport z = verify_tensor_bl(system, cover, zeros, static_cast<double>(p));
        worst_zero = std::max(worst_zero, std::abs(z.deficit));
        if (std::abs(z.deficit) > 1e-12) ok = false;
    }
    return {3, "tensor-suite", ok,
            "min deficit " + fmt(worst) + ", max |H=0 deficit| " + fmt(worst_zero)};
}

CriterionResult sharpness_of_q() {
    bool ok = true;
    std::string detail;
    // singleton cover (p = 1) at q = 2, and pair cover (p = 2) at q = 3
    struct Case {
        std::vector<Eigen::Index> dims;
        CoverSpec cover;
        double q;
    };
    std::vector<Case> cases;
    cases.push_back({{2, 3, 2},
                     CoverSpec{{IndexSubset({0}), IndexSubset({1}), IndexSubset({2})}},
                     2.0});
    cases.push_back({{2, 2, 2},
                     CoverSpec{{IndexSubset({0, 1}), IndexSubset({1, 2}), IndexSubset({0, 2})}},
                     3.0});
    for (const Case& c : cases) {
        FactorSystem system(c.dims);
        std::vector<HermitianOperator> zeros;
        for (const IndexSubset& J : c.cover.subsets) {
            Eigen::Index d = subset_dim(system, J);
            zeros.push_back(HermitianOperator(Matrix::Zero(d, d)));
        }
        VerificationReport rep = verify_tensor_bl(system, c.cover, zeros, c.q);
        double computed_ratio = std::exp(-rep.deficit);  // lhs / rhs
        ScalingReport sc = scaling_counterexample(c.q, c.cover, c.dims);
        if (std::abs(computed_ratio - sc.ratio) > 1e-12 * sc.ratio) ok = false;
        if (sc.ratio <= 1.0) ok = false;
        for (std::size_t k = 1; k < sc.schedule.size(); ++k)
            if (sc.schedule[k].ratio <= sc.schedule[k - 1].ratio) ok = false;
        detail += fmt(sc.ratio) + " ";
    }
    return {4, "sharpness-of-q", ok, "ratios " + detail};
}

CriterionResult ssa_suite(std::uint64_t seed) {
    FactorSystem system({2, 2, 2});
    CoverSpec cover{{IndexSubset({0, 1}), IndexSubset({1, 2}), IndexSubset({2, 0})}};
    double worst_ssa = std::numeric_limits<double>::infinity();
    double worst_comb = worst_ssa;
    bool ok = true;
    std::vector<std::vector<int>> subsets = {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}, {0, 1, 2}};
    for (std::uint64_t t = 0; t < 1000; ++t) {
        Rng rng(seed, t);
        Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng.integer(0, 7));
        Density rho = random_density_rank(8, rank, rng, TraceFunctional::Kind::Trace);
        IndexSubset J(subsets[rng.integer(0, subsets.size() - 1)]);
        IndexSubset K(subsets[rng.integer(0, subsets.size() - 1)]);
        VerificationReport s = verify_ssa(system, rho, J, K);
        worst_ssa = std::min(worst_ssa, s.deficit);
        if (s.deficit < -1e-9) ok = false;
        VerificationReport c = verify_entropy_combination(system, rho, cover);
        worst_comb = std::min(worst_comb, c.deficit);
        if (c.deficit < -1e-9) ok = false;
    }
    return {5, "ssa-suite", ok,
            "min SSA deficit " + fmt(worst_ssa) + ", min combination deficit " + fmt(worst_comb)};
}

CriterionResult legendre_duality(std::uint64_t seed) {
    bool ok = true;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(seed, t);
        Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.integer(0, 14));
        TraceFunctional::Kind kind =
            t % 2 ? TraceFunctional::Kind::Trace : TraceFunctional::Kind::NormalizedTrace;
        Density rho = random_density(d, rng, kind, 1e-3);
        LegendreReport lr = legendre_entropy_check(rho, rng, 100, 1500);
        if (!lr.bound_held || !lr.full_rank || !lr.attained) ok = false;

        HermitianOperator H = random_hermitian(d, rng, 2.0);
        TraceFunctional fn = kind == TraceFunctional::Kind::Trace
                                 ? TraceFunctional::trace(d)
                                 : TraceFunctional::normalized(d);
        LogPartitionReport pr = log_partition_check(H, fn, rng, 100, 300);
        if (!pr.bound_held || !pr.attained) ok = false;
    }
    return {6, "legendre-duality", ok, ok ? "bound + attainment on 100 instances" : "failed"};
}

CriterionResult duality_chain(std::uint64_t seed) {
    FactorSystem system({2, 2, 2});
    CoverSpec cover{{IndexSubset({0, 1}), IndexSubset({1, 2}), IndexSubset({2, 0})}};
    auto tensor = make_tensor_setting(system, cover, {2.0, 2.0, 2.0});
    Rng rng1(seed, 101);
    VerificationReport a = verify_duality_equivalence(*tensor, rng1, 100, 1e-8);

    auto algebra = std::make_shared<CliffordAlgebra>(3);
    FrameSpec frame = random_tight_frame(3, 4, seed + 7);
    auto clifford = make_clifford_setting(algebra, frame);
    Rng rng2(seed, 202);
    VerificationReport b = verify_duality_equivalence(*clifford, rng2, 100, 1e-8);

    return {7, "duality-chain", a.pass && b.pass,
            "tensor eq-err " + fmt(a.lhs) + " / min link " + fmt(a.rhs) + "; clifford eq-err " +
                fmt(b.lhs) + " / min link " + fmt(b.rhs)};
}

CriterionResult clifford_suite(std::uint64_t seed) {
    bool ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint64_t t = 0; t < 1000; ++t) {
        Rng rng(seed, 3000 + t);
        int n = 2 + static_cast<int>(rng.integer(0, 4));
        CliffordAlgebra alg(n);
        FrameSpec frame = t % 5 == 0 ? random_tight_frame(n, n + 1 + static_cast<int>(rng.integer(0, 2)),
                                                          seed + t)
                                     : random_admissible_frame(n, 1 + static_cast<int>(rng.integer(0, 4)),
                                                               rng);
        std::vector<CliffordElement> hs;
        for (int j = 0; j < frame.size(); ++j)
            hs.push_back(random_subalgebra_hermitian(alg, frame.subspace(j), rng, 2.0 * rng.uniform()));
        VerificationReport rep = verify_clifford_bl(alg, frame, hs);
        worst = std::min(worst, rep.deficit);
        if (rep.condition_violated || rep.deficit < -1e-9) ok = false;
    }

    int violations = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(seed, 4000 + t);
        CliffordAlgebra alg(2);
        std::vector<std::pair<SubspaceSpec, double>> parts;
        for (int j = 0; j < 3; ++j) parts.emplace_back(SubspaceSpec::span(random_unit_vector(2, rng)), 1.0);
        FrameSpec frame(2, std::move(parts));
        SearchConfig cfg;
        cfg.seed = splitmix64(seed) ^ t;
        cfg.budget = 50;
        cfg.restarts = 2;
        SearchResult sr = search_clifford(alg, frame, cfg);
        if (sr.violation_found) ++violations;
    }
    if (violations != 100) ok = false;
    return {8, "clifford-suite", ok,
            "min admissible deficit " + fmt(worst) + ", violations found " +
                std::to_string(violations) + "/100"};
}

CriterionResult gross_formula(std::uint64_t seed) {
    bool ok = true;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(seed, 5000 + t);
        int n = 1 + static_cast<int>(rng.integer(0, 5));
        CliffordAlgebra alg(n);
        CliffordElement A = random_positive_element(alg, rng, 1.0);
        for (GrossFunction f : {GrossFunction::Identity, GrossFunction::Exp, GrossFunction::Log})
            if (!verify_gross_formula(alg, A, f, 1e-10).pass) ok = false;
    }
    return {9, "gross-formula", ok, ok ? "identity/exp/log on 100 elements" : "failed"};
}

CriterionResult flow_suite(std::uint64_t seed) {
    bool ok = true;
    std::string fail;

    CliffordAlgebra alg(4);
    for (std::uint32_t a = 0; a < alg.basis_size(); ++a) {
        CliffordElement e = alg.basis_element(a);
        CliffordElement Ne = number_operator(e);
        for (std::uint32_t b = 0; b < alg.basis_size(); ++b) {
            Cplx want = b == a ? Cplx(static_cast<double>(std::popcount(a)), 0.0) : Cplx(0.0, 0.0);
            if (Ne.coefficient(b) != want) ok = false;
        }
    }
    if (!ok) fail += "number-op ";

    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(seed, 6000 + t);
        Eigen::VectorXcd c(alg.basis_size());
        for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Cplx(rng.normal(), rng.normal());
        CliffordElement x(&alg, std::move(c));
        double s = rng.uniform(0.0, 2.0), u = rng.uniform(0.0, 2.0);
        CliffordElement lhs = mehler_flow(mehler_flow(x, s), u);
        CliffordElement rhs = mehler_flow(x, s + u);
        if ((lhs - rhs).coefficients().norm() > 1e-12 * (1.0 + rhs.coefficients().norm())) {
            ok = false;
            fail += "semigroup ";
            break;
        }
    }

    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(seed, 7000 + t);
        SubspaceSpec V = SubspaceSpec::random(4, 1 + static_cast<int>(rng.integer(0, 3)), rng);
        Eigen::VectorXcd c(alg.basis_size());
        for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Cplx(rng.normal(), rng.normal());
        CliffordElement x(&alg, std::move(c));
        double tt = rng.uniform(0.1, 2.0);
        CliffordElement lhs = conditional_expectation(mehler_flow(x, tt), V);
        CliffordElement rhs = mehler_flow(conditional_expectation(x, V), tt);
        if ((lhs - rhs).coefficients().norm() > 1e-11 * (1.0 + rhs.coefficients().norm())) {
            ok = false;
            fail += "commutation ";
            break;
        }
    }

    CliffordAlgebra alg3(3);
    for (std::uint64_t t = 0; t < 20; ++t) {
        Rng rng(seed, 8000 + t);
        CliffordElement rho = random_density_element(alg3, rng, 1e-3);
        double t0 = rng.uniform(0.2, 1.0), h = 1e-3;
        double sp = element_entropy(alg3, mehler_flow(rho, t0 + h));
        double sm = element_entropy(alg3, mehler_flow(rho, t0 - h));
        double dS = (sp - sm) / (2.0 * h);
        double D = entropy_production(alg3, mehler_flow(rho, t0));
        if (std::abs(dS - D) > 1e-5 * std::max(1.0, std::abs(D))) {
            ok = false;
            fail += "dS/dt ";
            break;
        }
    }
    return {10, "flow-suite", ok, ok ? "number op, semigroup, commutation, dS/dt" : "failed: " + fail};
}

CriterionResult production_monotonicity(std::uint64_t seed) {
    bool ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (std::uint64_t t = 0; t < 1000; ++t) {
        Rng rng(seed, 9000 + t);
        int n = 2 + static_cast<int>(rng.integer(0, 4));
        CliffordAlgebra alg(n);
        CliffordElement rho = random_density_element(alg, rng);
        SubspaceSpec V = SubspaceSpec::random(n, 1 + static_cast<int>(rng.integer(0, static_cast<std::uint64_t>(n - 1))), rng);
        VerificationReport rep = verify_production_monotonicity(alg, rho, V);
        worst = std::min(worst, rep.deficit);
        if (!rep.pass) ok = false;
    }

    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(0.2 * k);
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(seed, 10000 + t);
        int n = 3 + static_cast<int>(rng.integer(0, 1));
        CliffordAlgebra alg(n);
        FrameSpec frame = random_admissible_frame(n, 2 + static_cast<int>(rng.integer(0, 2)), rng);
        CliffordElement rho = random_density_element(alg, rng);
        VerificationReport rep = verify_deficit_monotone(alg, rho, frame, grid);
        if (!rep.pass || rep.condition_violated) ok = false;
    }
    return {11, "production-monotonicity", ok, "min D_V - D deficit " + fmt(worst)};
}

CriterionResult gaussian_suite(std::uint64_t seed) {
    bool ok = true;
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(seed, 11000 + t);
        int n = 1 + static_cast<int>(rng.integer(0, 3));
        std::vector<std::pair<SubspaceSpec, double>> parts;
        int N = 1 + static_cast<int>(rng.integer(0, 3));
        for (int j = 0; j < N; ++j)
            parts.emplace_back(SubspaceSpec::random(n, 1 + static_cast<int>(rng.integer(0, static_cast<std::uint64_t>(n - 1))), rng),
                               1.0 + 4.0 * rng.uniform());
        FrameSpec frame(n, std::move(parts));
        RealVector b(n);
        for (int i = 0; i < n; ++i) b[i] = 3.0 * rng.normal();
        VerificationReport rep = verify_gaussian_sa(b, frame);
        double quad = 0.5 * b.dot(frame.slack() * b);
        worst = std::max(worst, std::abs(rep.deficit - quad));
        if (std::abs(rep.deficit - quad) > 1e-12 * std::max(1.0, std::abs(quad))) ok = false;
    }

    {
        std::vector<std::pair<SubspaceSpec, double>> parts;
        parts.emplace_back(SubspaceSpec::full(1), 2.0);
        parts.emplace_back(SubspaceSpec::full(1), 2.0);
        FrameSpec frame(1, std::move(parts));
        RealVector c1(1), c2(1);
        c1 << 0.4;
        c2 << -0.3;
        if (!verify_gaussian_bl_quadrature(frame, {c1, c2}, 1e-6).pass) ok = false;
    }
    {
        RealVector e0(2), e1(2);
        e0 << 1.0, 0.0;
        e1 << 0.0, 1.0;
        std::vector<std::pair<SubspaceSpec, double>> parts;
        parts.emplace_back(SubspaceSpec::span(e0), 1.0);
        parts.emplace_back(SubspaceSpec::span(e1), 1.0);
        FrameSpec frame(2, std::move(parts));
        RealVector c1(1), c2(1);
        c1 << 0.5;
        c2 << 0.25;
        if (!verify_gaussian_bl_quadrature(frame, {c1, c2}, 1e-6).pass) ok = false;
    }

    {
        Rng rng(seed, 11999);
        std::vector<std::pair<SubspaceSpec, double>> parts;
        for (int j = 0; j < 3; ++j) parts.emplace_back(SubspaceSpec::span(random_unit_vector(2, rng)), 1.0);
        FrameSpec frame(2, std::move(parts));
        FrameCondition cond = check_frame_condition(frame);
        VerificationReport rep = verify_gaussian_sa(cond.witness, frame);
        if (cond.admissible || !rep.condition_violated || rep.deficit >= 0.0) ok = false;
    }
    return {12, "gaussian-suite", ok, "max closed-form mismatch " + fmt(worst)};
}

CriterionResult cosh_psi_suite(std::uint64_t seed) {
    bool ok = true;
    double worst_cosh = std::numeric_limits<double>::infinity();
    double worst_psi = worst_cosh;

    std::vector<FrameSpec> frames;
    for (int k = 0; k < 25; ++k) {
        int n = 1 + k % 3;
        int N = n + 1 + k % 3;
        frames.push_back(random_tight_frame(n, N, seed + 100 + static_cast<std::uint64_t>(k)));
    }

    for (std::uint64_t t = 0; t < 100000; ++t) {
        Rng rng(seed, 20000 + t);
        const FrameSpec& frame = frames[t % frames.size()];
        RealVector b(frame.size());
        for (int j = 0; j < frame.size(); ++j) b[j] = 3.0 * (2.0 * rng.uniform() - 1.0);
        VerificationReport c = verify_cosh_inequality(b, frame);
        worst_cosh = std::min(worst_cosh, c.deficit);
        if (c.deficit < -1e-12) ok = false;

        RealVector a = rng.uniform(0.0, 0.999) * random_unit_vector(frame.ambient(), rng);
        VerificationReport p = verify_psi_subadditivity(a, frame);
        worst_psi = std::min(worst_psi, p.deficit);
        if (p.deficit < -1e-12 || p.condition_violated) ok = false;
    }

    CliffordAlgebra alg(3);
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(seed, 21000 + t);
        RealVector a = rng.uniform(0.0, 0.99) * random_unit_vector(3, rng);
        double se = element_entropy(alg, rho_a(alg, a));
        if (std::abs(se + psi(a.norm())) > 1e-9) ok = false;
    }

    for (std::uint64_t t = 0; t < 10000; ++t) {
        Rng rng(seed, 22000 + t);
        double x = rng.uniform(-0.999, 0.999);
        double y = psi_prime(x);
        if (std::abs(psi(x) - (x * y - psi_star(y))) > 1e-8) ok = false;
        double z = rng.uniform(-5.0, 5.0);
        double xt = std::tanh(z);
        if (std::abs(psi_star(z) - (xt * z - psi(xt))) > 1e-8) ok = false;
    }
    return {13, "cosh-psi-suite", ok,
            "min cosh deficit " + fmt(worst_cosh) + ", min psi deficit " + fmt(worst_psi)};
}

CriterionResult tightness(std::uint64_t seed) {
    bool ok = true;
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.budget = 40;
    cfg.restarts = 4;

    {
        FactorSystem system({2, 2});
        CoverSpec cover{{IndexSubset({0}), IndexSubset({1})}};
        auto deficit = [&](const RealVector& params) {
            std::vector<HermitianOperator> hs;
            for (int j = 0; j < 2; ++j) {
                Matrix H(2, 2);
                H(0, 0) = params[4 * j];
                H(1, 1) = params[4 * j + 1];
                H(0, 1) = Cplx(params[4 * j + 2], params[4 * j + 3]);
                H(1, 0) = std::conj(H(0, 1));
                hs.push_back(HermitianOperator(H));
            }
            return verify_tensor_bl(system, cover, hs, 1.0).deficit;
        };
        if (!tightness_probe("tensor", deficit, 8, cfg).pass) ok = false;
    }
    {
        CliffordAlgebra alg(2);
        RealVector e0(2), e1(2);
        e0 << 1.0, 0.0;
        e1 << 0.0, 1.0;
        std::vector<std::pair<SubspaceSpec, double>> parts;
        parts.emplace_back(SubspaceSpec::span(e0), 1.0);
        parts.emplace_back(SubspaceSpec::span(e1), 1.0);
        FrameSpec frame(2, std::move(parts));
        auto deficit = [&](const RealVector& a) {
            double norm = a.norm();
            RealVector b = norm > 0.999 ? RealVector(0.999 / norm * a) : a;
            CliffordElement rho = rho_a(alg, b);
            double acc = -element_entropy(alg, rho);
            for (int j = 0; j < frame.size(); ++j)
                acc += element_entropy(alg, conditional_expectation(rho, frame.subspace(j))) /
                       frame.exponent(j);
            return acc;
        };
        SearchConfig c2 = cfg;
        c2.radius = 0.999;
        if (!tightness_probe("clifford", deficit, 2, c2).pass) ok = false;
    }
    {
        FrameSpec frame = random_tight_frame(3, 5, seed + 13);
        RealMatrix slack = frame.slack();
        auto deficit = [&](const RealVector& b) { return 0.5 * b.dot(slack * b); };
        if (!tightness_probe("gaussian", deficit, 3, cfg).pass) ok = false;
    }
    return {14, "tightness", ok, ok ? "deficit 0 at the trivial point in all settings" : "failed"};
}

CriterionResult determinism(std::uint64_t seed) {
    std::string a = canonical_report(seed);
    std::string b = canonical_report(seed);
    bool ok = a == b && !a.empty();
    return {15, "determinism", ok,
            ok ? "byte-identical reports (" + std::to_string(a.size()) + " bytes)" : "mismatch"};
}

}  // namespace

std::string canonical_report(std::uint64_t seed) {
    std::ostringstream os;
    FactorSystem system({2, 2, 2});
    CoverSpec cover{{IndexSubset({0, 1}), IndexSubset({1, 2}), IndexSubset({2, 0})}};
    for (std::uint64_t t = 0; t < 20; ++t) {
        Rng rng(seed, t);
        std::vector<HermitianOperator> hs;
        for (int j = 0; j < 3; ++j) hs.push_back(random_hermitian(4, rng, 2.0));
        VerificationReport rep = verify_tensor_bl(system, cover, hs, 2.0);
        rep.seed = seed;
        rep.trial = t;
        os << rep.to_json(false).dump() << "\n";
    }
    return os.str();
}

std::vector<CriterionResult> run_selftest(std::uint64_t seed) {
    return {car_exactness(),
            tau_consistency(seed),
            tensor_suite(seed),
            sharpness_of_q(),
            ssa_suite(seed),
            legendre_duality(seed),
            duality_chain(seed),
            clifford_suite(seed),
            gross_formula(seed),
            flow_suite(seed),
            production_monotonicity(seed),
            gaussian_suite(seed),
            cosh_psi_suite(seed),
            tightness(seed),
            determinism(seed)};
}

std::string format_criterion(const CriterionResult& r) {
    std::ostringstream os;
    os << "[" << (r.index < 10 ? " " : "") << r.index << "] " << (r.pass ? "PASS" : "FAIL") << " "
       << r.name << ": " << r.detail;
    return os.str();
}

}  // namespace ncbl
