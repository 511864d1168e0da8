#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncbl/clifford.hpp"
#include "ncbl/duality.hpp"
#include "ncbl/flow.hpp"
#include "ncbl/frames.hpp"
#include "ncbl/gaussian.hpp"
#include "ncbl/search.hpp"
#include "ncbl/selftest.hpp"
#include "ncbl/tensor.hpp"

namespace py = pybind11;
using namespace ncbl;

namespace {

TraceFunctional functional_for(Eigen::Index dim, bool normalized) {
    return normalized ? TraceFunctional::normalized(dim) : TraceFunctional::trace(dim);
}

py::dict report_dict(const VerificationReport& r) {
    py::dict d;
    d["setting"] = r.setting;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["deficit"] = r.deficit;
    d["pass"] = r.pass;
    d["condition_violated"] = r.condition_violated;
    d["tolerance"] = r.tolerance;
    d["log_constant"] = r.log_constant;
    return d;
}

FrameSpec build_frame(int n, const std::vector<std::pair<RealMatrix, double>>& parts) {
    std::vector<std::pair<SubspaceSpec, double>> built;
    for (const auto& [basis, p] : parts)
        built.emplace_back(SubspaceSpec::orthonormalized(n, basis), p);
    return FrameSpec(n, std::move(built));
}

CoverSpec build_cover(const std::vector<std::vector<int>>& subsets) {
    CoverSpec cover;
    for (const auto& s : subsets) cover.subsets.push_back(IndexSubset(s));
    return cover;
}

}  // namespace

PYBIND11_MODULE(ncblpy, m) {
    m.doc() = "trace-inequality workbench: tensor, Clifford and Gaussian settings";

    m.def("psi", &psi, py::arg("x"));
    m.def("psi_prime", &psi_prime, py::arg("x"));
    m.def("psi_star", &psi_star, py::arg("y"));

    m.def(
        "entropy",
        [](const Matrix& rho, bool normalized) {
            return entropy(Density(HermitianOperator(rho), functional_for(rho.rows(), normalized)));
        },
        py::arg("rho"), py::arg("normalized") = false);

    m.def(
        "relative_entropy",
        [](const Matrix& rho, const Matrix& sigma, bool normalized) {
            TraceFunctional fn = functional_for(rho.rows(), normalized);
            return relative_entropy(Density(HermitianOperator(rho), fn),
                                    Density(HermitianOperator(sigma), fn));
        },
        py::arg("rho"), py::arg("sigma"), py::arg("normalized") = false);

    m.def(
        "matrix_exp", [](const Matrix& h) { return matrix_exp(HermitianOperator(h)).mat(); },
        py::arg("h"));
    m.def(
        "matrix_log",
        [](const Matrix& rho, bool normalized) {
            return matrix_log(Density(HermitianOperator(rho), functional_for(rho.rows(), normalized)))
                .mat();
        },
        py::arg("rho"), py::arg("normalized") = false);
    m.def(
        "log_trace_exp",
        [](const Matrix& h, bool normalized) {
            return log_trace_exp(HermitianOperator(h), functional_for(h.rows(), normalized));
        },
        py::arg("h"), py::arg("normalized") = false);

    m.def(
        "partial_trace",
        [](const std::vector<Eigen::Index>& dims, const std::vector<int>& subset, const Matrix& rho) {
            return partial_trace_matrix(FactorSystem(dims), IndexSubset(subset), rho);
        },
        py::arg("dims"), py::arg("subset"), py::arg("rho"));

    m.def(
        "embed",
        [](const std::vector<Eigen::Index>& dims, const std::vector<int>& subset, const Matrix& a) {
            return embed_matrix(FactorSystem(dims), IndexSubset(subset), a);
        },
        py::arg("dims"), py::arg("subset"), py::arg("a"));

    m.def(
        "verify_tensor_bl",
        [](const std::vector<Eigen::Index>& dims, const std::vector<std::vector<int>>& subsets,
           const std::vector<Matrix>& hs, double q, double tol) {
            std::vector<HermitianOperator> ops;
            for (const Matrix& h : hs) ops.push_back(HermitianOperator(h));
            return report_dict(verify_tensor_bl(FactorSystem(dims), build_cover(subsets), ops, q, tol));
        },
        py::arg("dims"), py::arg("subsets"), py::arg("hs"), py::arg("q"), py::arg("tol") = 1e-9);

    m.def(
        "verify_ssa",
        [](const std::vector<Eigen::Index>& dims, const Matrix& rho, const std::vector<int>& J,
           const std::vector<int>& K, double tol) {
            FactorSystem system(dims);
            Density d(HermitianOperator(rho), TraceFunctional::trace(system.total_dim()));
            return report_dict(verify_ssa(system, d, IndexSubset(J), IndexSubset(K), tol));
        },
        py::arg("dims"), py::arg("rho"), py::arg("J"), py::arg("K"), py::arg("tol") = 1e-9);

    m.def(
        "clifford_generator",
        [](int n, int i) { return CliffordAlgebra(n).generator_matrix(i); }, py::arg("n"),
        py::arg("i"));

    m.def(
        "clifford_entropy_rho_a",
        [](int n, const RealVector& a) {
            CliffordAlgebra alg(n);
            return element_entropy(alg, rho_a(alg, a));
        },
        py::arg("n"), py::arg("a"));

    m.def(
        "verify_clifford_bl",
        [](int n, const std::vector<std::pair<RealMatrix, double>>& frame,
           const std::vector<Eigen::VectorXcd>& hs, double tol) {
            CliffordAlgebra alg(n);
            std::vector<CliffordElement> ops;
            for (const auto& h : hs) ops.push_back(CliffordElement(&alg, h));
            return report_dict(verify_clifford_bl(alg, build_frame(n, frame), ops, tol));
        },
        py::arg("n"), py::arg("frame"), py::arg("hs"), py::arg("tol") = 1e-9);

    m.def(
        "verify_cosh",
        [](const RealVector& b, int n, const std::vector<std::pair<RealMatrix, double>>& frame,
           double tol) { return report_dict(verify_cosh_inequality(b, build_frame(n, frame), tol)); },
        py::arg("b"), py::arg("n"), py::arg("frame"), py::arg("tol") = 1e-12);

    m.def(
        "verify_psi_subadditivity",
        [](const RealVector& a, int n, const std::vector<std::pair<RealMatrix, double>>& frame,
           double tol) {
            return report_dict(verify_psi_subadditivity(a, build_frame(n, frame), tol));
        },
        py::arg("a"), py::arg("n"), py::arg("frame"), py::arg("tol") = 1e-12);

    m.def(
        "verify_gaussian_sa",
        [](const RealVector& b, int n, const std::vector<std::pair<RealMatrix, double>>& frame,
           double tol) { return report_dict(verify_gaussian_sa(b, build_frame(n, frame), tol)); },
        py::arg("b"), py::arg("n"), py::arg("frame"), py::arg("tol") = 1e-12);

    m.def(
        "random_tight_frame",
        [](int n, int N, std::uint64_t seed) {
            FrameSpec f = random_tight_frame(n, N, seed);
            std::vector<std::pair<RealMatrix, double>> out;
            for (int j = 0; j < f.size(); ++j) out.emplace_back(f.subspace(j).basis(), f.exponent(j));
            return out;
        },
        py::arg("n"), py::arg("N"), py::arg("seed"));

    m.def(
        "frame_slack",
        [](int n, const std::vector<std::pair<RealMatrix, double>>& frame) {
            return build_frame(n, frame).slack();
        },
        py::arg("n"), py::arg("frame"));

    m.def(
        "scaling_counterexample",
        [](double q, const std::vector<std::vector<int>>& subsets,
           const std::vector<Eigen::Index>& dims, int doublings) {
            ScalingReport rep = scaling_counterexample(q, build_cover(subsets), dims, doublings);
            py::dict d;
            d["ratio"] = rep.ratio;
            py::list sched;
            for (const ScalingRow& row : rep.schedule) {
                py::dict r;
                r["dims"] = row.dims;
                r["ratio"] = row.ratio;
                sched.append(r);
            }
            d["schedule"] = sched;
            return d;
        },
        py::arg("q"), py::arg("subsets"), py::arg("dims"), py::arg("doublings") = 3);

    m.def(
        "selftest",
        [](std::uint64_t seed) {
            py::list out;
            for (const CriterionResult& r : run_selftest(seed)) {
                py::dict d;
                d["index"] = r.index;
                d["name"] = r.name;
                d["pass"] = r.pass;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("seed") = 42);
}
