#include "ncbl/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace ncbl {

namespace {

// Index bookkeeping: full index <-> (digits on J, digits on the complement).
struct SlotIndexer {
    std::vector<Eigen::Index> dims;       // all factor dims
    std::vector<int> j_members;           // sorted
    std::vector<int> comp_members;        // sorted
    std::vector<Eigen::Index> strides;    // canonical strides, factor 0 slowest
    Eigen::Index j_dim = 1, comp_dim = 1;

    SlotIndexer(const FactorSystem& system, const IndexSubset& J) {
        dims = system.dims();
        j_members = J.members();
        int n = system.factors();
        for (int i = 0; i < n; ++i)
            if (!J.contains(i)) comp_members.push_back(i);
        strides.assign(dims.size(), 1);
        for (int i = n - 2; i >= 0; --i)
            strides[static_cast<std::size_t>(i)] =
                strides[static_cast<std::size_t>(i + 1)] * dims[static_cast<std::size_t>(i + 1)];
        for (int i : j_members) j_dim *= dims[static_cast<std::size_t>(i)];
        for (int i : comp_members) comp_dim *= dims[static_cast<std::size_t>(i)];
    }

    // Decompose a flat index over a member list (row-major within that list)
    // and scatter it into the canonical full index.
    Eigen::Index scatter(const std::vector<int>& members, Eigen::Index flat) const {
        Eigen::Index full = 0;
        for (auto it = members.rbegin(); it != members.rend(); ++it) {
            Eigen::Index d = dims[static_cast<std::size_t>(*it)];
            full += (flat % d) * strides[static_cast<std::size_t>(*it)];
            flat /= d;
        }
        return full;
    }

    Eigen::Index combine(Eigen::Index j_flat, Eigen::Index comp_flat) const {
        return scatter(j_members, j_flat) + scatter(comp_members, comp_flat);
    }
};

}  // namespace

FactorSystem::FactorSystem(std::vector<Eigen::Index> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw NumericalError("FactorSystem: no factors");
    total_ = 1;
    for (Eigen::Index d : dims_) {
        if (d < 2) throw NumericalError("FactorSystem: factor dimension must be >= 2");
        total_ *= d;
        if (total_ > 4096) throw NumericalError("FactorSystem: total dimension exceeds 4096");
    }
}

IndexSubset::IndexSubset(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty()) throw NumericalError("IndexSubset: empty subset");
    if (members_.front() < 0) throw NumericalError("IndexSubset: negative index");
}

bool IndexSubset::contains(int i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
}

IndexSubset IndexSubset::set_union(const IndexSubset& a, const IndexSubset& b) {
    std::vector<int> out;
    std::set_union(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                   std::back_inserter(out));
    return IndexSubset(out);
}

bool IndexSubset::set_intersection(const IndexSubset& a, const IndexSubset& b,
                                   std::vector<int>& out) {
    out.clear();
    std::set_intersection(a.members_.begin(), a.members_.end(), b.members_.begin(),
                          b.members_.end(), std::back_inserter(out));
    return !out.empty();
}

Multiplicities min_multiplicity(const CoverSpec& cover, int n) {
    Multiplicities m;
    m.per_index.assign(static_cast<std::size_t>(n), 0);
    for (const auto& J : cover.subsets)
        for (int i : J.members()) {
            if (i >= n) throw NumericalError("min_multiplicity: subset index out of range");
            ++m.per_index[static_cast<std::size_t>(i)];
        }
    m.min = *std::min_element(m.per_index.begin(), m.per_index.end());
    return m;
}

Eigen::Index subset_dim(const FactorSystem& system, const IndexSubset& J) {
    Eigen::Index d = 1;
    for (int i : J.members()) {
        if (i >= system.factors()) throw NumericalError("subset_dim: index out of range");
        d *= system.dim(i);
    }
    return d;
}

Matrix embed_matrix(const FactorSystem& system, const IndexSubset& J, const Matrix& A) {
    SlotIndexer ix(system, J);
    if (A.rows() != ix.j_dim || A.cols() != ix.j_dim)
        throw NumericalError("embed: operator dimension does not match subset");
    Matrix out = Matrix::Zero(system.total_dim(), system.total_dim());
    for (Eigen::Index r = 0; r < ix.j_dim; ++r)
        for (Eigen::Index c = 0; c < ix.j_dim; ++c) {
            Cplx v = A(r, c);
            if (v == Cplx(0.0, 0.0)) continue;
            for (Eigen::Index m = 0; m < ix.comp_dim; ++m)
                out(ix.combine(r, m), ix.combine(c, m)) = v;
        }
    return out;
}

HermitianOperator embed(const FactorSystem& system, const IndexSubset& J,
                        const HermitianOperator& H_J) {
    return HermitianOperator(embed_matrix(system, J, H_J.mat()));
}

Matrix partial_trace_matrix(const FactorSystem& system, const IndexSubset& J, const Matrix& rho) {
    if (rho.rows() != system.total_dim())
        throw NumericalError("partial_trace: density dimension mismatch");
    SlotIndexer ix(system, J);
    Matrix out = Matrix::Zero(ix.j_dim, ix.j_dim);
    for (Eigen::Index r = 0; r < ix.j_dim; ++r)
        for (Eigen::Index c = 0; c < ix.j_dim; ++c) {
            Cplx acc(0.0, 0.0);
            for (Eigen::Index m = 0; m < ix.comp_dim; ++m)
                acc += rho(ix.combine(r, m), ix.combine(c, m));
            out(r, c) = acc;
        }
    return out;
}

Density partial_trace(const FactorSystem& system, const IndexSubset& J, const Density& rho) {
    Matrix m = partial_trace_matrix(system, J, rho.mat());
    Eigen::Index dj = m.rows();
    if (rho.functional().is_normalized()) {
        // tau_J(rho_J) = 1 requires rescaling by dim ratio
        m *= static_cast<double>(dj) / static_cast<double>(system.total_dim());
        return Density(HermitianOperator(m), TraceFunctional::normalized(dj));
    }
    return Density(HermitianOperator(m), TraceFunctional::trace(dj));
}

VerificationReport verify_tensor_bl(const FactorSystem& system, const CoverSpec& cover,
                                    const std::vector<HermitianOperator>& hamiltonians,
                                    double q, double tol) {
    if (cover.subsets.size() != hamiltonians.size())
        throw NumericalError("verify_tensor_bl: one Hamiltonian per cover subset required");
    Multiplicities mult = min_multiplicity(cover, system.factors());
    if (mult.min < 1)
        throw NumericalError("verify_tensor_bl: cover leaves an index uncovered (p = 0)");

    bool all_zero = true;
    for (const HermitianOperator& H : hamiltonians)
        if (H.mat().norm() != 0.0) all_zero = false;
    if (all_zero) {
        // H_j = 0 evaluates in closed form: deficit = sum_i (p(i)/q - 1) ln d_i,
        // which cancels exactly (term by term) for a uniform cover with q = p
        double lhs_log = 0.0, rhs_log = 0.0, deficit = 0.0;
        for (int i = 0; i < system.factors(); ++i) {
            double ld = std::log(static_cast<double>(system.dim(i)));
            lhs_log += ld;
            double w = static_cast<double>(mult.per_index[static_cast<std::size_t>(i)]) / q;
            rhs_log += w * ld;
            deficit += (w - 1.0) * ld;
        }
        VerificationReport rep;
        rep.setting = "tensor-bl";
        rep.lhs = std::exp(lhs_log);
        rep.rhs = std::exp(rhs_log);
        rep.deficit = deficit;
        rep.tolerance = tol;
        double scale = std::max({1.0, std::abs(lhs_log), std::abs(rhs_log)});
        rep.pass = rep.deficit >= -tol * scale;
        return rep;
    }

    Matrix total = Matrix::Zero(system.total_dim(), system.total_dim());
    double rhs_log = 0.0;
    for (std::size_t j = 0; j < cover.subsets.size(); ++j) {
        const IndexSubset& J = cover.subsets[j];
        const HermitianOperator& H = hamiltonians[j];
        total += embed_matrix(system, J, H.mat());
        Eigen::Index dj = subset_dim(system, J);
        HermitianOperator qH(q * H.mat());
        rhs_log += log_trace_exp(qH, TraceFunctional::trace(dj)) / q;
    }
    double lhs_log = log_trace_exp(HermitianOperator(total), TraceFunctional::trace(system.total_dim()));

    VerificationReport rep;
    rep.setting = "tensor-bl";
    rep.lhs = std::exp(lhs_log);
    rep.rhs = std::exp(rhs_log);
    rep.deficit = rhs_log - lhs_log;
    rep.tolerance = tol;
    double scale = std::max({1.0, std::abs(lhs_log), std::abs(rhs_log)});
    rep.pass = rep.deficit >= -tol * scale;
    return rep;
}

VerificationReport verify_ssa(const FactorSystem& system, const Density& rho,
                              const IndexSubset& J, const IndexSubset& K, double tol) {
    double sJ = entropy(partial_trace(system, J, rho));
    double sK = entropy(partial_trace(system, K, rho));
    double sU = entropy(partial_trace(system, IndexSubset::set_union(J, K), rho));
    double sI = 0.0;
    std::vector<int> inter;
    if (IndexSubset::set_intersection(J, K, inter))
        sI = entropy(partial_trace(system, IndexSubset(inter), rho));

    VerificationReport rep;
    rep.setting = "ssa";
    rep.lhs = sU + sI;
    rep.rhs = sJ + sK;
    rep.deficit = rep.rhs - rep.lhs;
    rep.tolerance = tol;
    rep.pass = rep.deficit >= -tol;
    return rep;
}

VerificationReport verify_entropy_combination(const FactorSystem& system, const Density& rho,
                                              const CoverSpec& cover, double tol) {
    Multiplicities mult = min_multiplicity(cover, system.factors());
    if (mult.min < 1)
        throw NumericalError("verify_entropy_combination: cover leaves an index uncovered");
    double sum = 0.0;
    for (const auto& J : cover.subsets) sum += entropy(partial_trace(system, J, rho));
    VerificationReport rep;
    rep.setting = "entropy-combination";
    rep.lhs = entropy(rho);
    rep.rhs = sum / static_cast<double>(mult.min);
    rep.deficit = rep.rhs - rep.lhs;
    rep.tolerance = tol;
    rep.pass = rep.deficit >= -tol;
    return rep;
}

GoldenThompson golden_thompson_gap(const HermitianOperator& H1, const HermitianOperator& H2) {
    if (H1.dim() != H2.dim()) throw NumericalError("golden_thompson_gap: dimension mismatch");
    GoldenThompson gt;
    gt.lhs = matrix_exp(HermitianOperator(H1.mat() + H2.mat())).mat().trace().real();
    gt.rhs = (matrix_exp(H1).mat() * matrix_exp(H2).mat()).trace().real();
    gt.gap = gt.rhs - gt.lhs;
    return gt;
}

}  // namespace ncbl
