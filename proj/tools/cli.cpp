#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncbl/clifford.hpp"
#include "ncbl/duality.hpp"
#include "ncbl/flow.hpp"
#include "ncbl/frames.hpp"
#include "ncbl/gaussian.hpp"
#include "ncbl/random_ensembles.hpp"
#include "ncbl/search.hpp"
#include "ncbl/selftest.hpp"
#include "ncbl/tensor.hpp"

using nlohmann::json;
using namespace ncbl;

namespace {

constexpr int kReportVersion = 1;

struct RunConfig {
    std::uint64_t seed = 42;
    std::uint64_t trials = 1000;
    int n = 3;
    std::string dims = "2,2,2";
    std::string subsets;
    std::string frame_file;
    double q = 0.0;  // 0 = derive from the cover
    double tol = 1e-9;
    bool tol_set = false;
    std::string format = "json";
    std::string out;
    bool no_timing = false;
};

// ---- JSON helpers ([re, im] pairs, row-major) -----------------------------

json mat_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

Matrix json_mat(const json& j) {
    Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = Cplx(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)][0],
                           j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)][1]);
    return m;
}

json cvec_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
    return out;
}

Eigen::VectorXcd json_cvec(const json& j) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = Cplx(j[i][0], j[i][1]);
    return v;
}

json rvec_json(const RealVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

RealVector json_rvec(const json& j) {
    RealVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i];
    return v;
}

// frame <-> {n, frames: [{basis: [[...]], p}]}; basis rows are the subspace
// basis vectors in ambient coordinates
json frame_json(const FrameSpec& frame) {
    json fs = json::array();
    for (int j = 0; j < frame.size(); ++j) {
        const RealMatrix& basis = frame.subspace(j).basis();
        json vecs = json::array();
        for (Eigen::Index c = 0; c < basis.cols(); ++c) vecs.push_back(rvec_json(basis.col(c)));
        fs.push_back({{"basis", vecs}, {"p", frame.exponent(j)}});
    }
    return {{"n", frame.ambient()}, {"frames", fs}};
}

FrameSpec json_frame(const json& j) {
    int n = j.at("n");
    std::vector<std::pair<SubspaceSpec, double>> parts;
    for (const json& f : j.at("frames")) {
        const json& vecs = f.at("basis");
        RealMatrix basis(n, static_cast<Eigen::Index>(vecs.size()));
        for (std::size_t c = 0; c < vecs.size(); ++c)
            basis.col(static_cast<Eigen::Index>(c)) = json_rvec(vecs[c]);
        parts.emplace_back(SubspaceSpec::orthonormalized(n, basis), f.at("p").get<double>());
    }
    return FrameSpec(n, std::move(parts));
}

std::vector<Eigen::Index> parse_dims(const std::string& s) {
    std::vector<Eigen::Index> dims;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) dims.push_back(std::stoll(tok));
    return dims;
}

// "{1,2},{2,3}" with 1-based factor indices
CoverSpec parse_subsets(const std::string& s) {
    CoverSpec cover;
    std::vector<int> cur;
    bool in_braces = false;
    std::string num;
    auto flush_num = [&] {
        if (!num.empty()) {
            cur.push_back(std::stoi(num) - 1);
            num.clear();
        }
    };
    for (char c : s) {
        if (c == '{') {
            in_braces = true;
            cur.clear();
        } else if (c == '}') {
            flush_num();
            in_braces = false;
            cover.subsets.push_back(IndexSubset(cur));
        } else if (std::isdigit(static_cast<unsigned char>(c)) && in_braces) {
            num.push_back(c);
        } else {
            flush_num();
        }
    }
    return cover;
}

FrameSpec load_or_random_frame(const RunConfig& cfg, Rng& rng, bool require_tight_1d) {
    if (!cfg.frame_file.empty()) {
        std::ifstream in(cfg.frame_file);
        if (!in) throw CLI::ValidationError("--frame-file", "cannot open " + cfg.frame_file);
        json j;
        in >> j;
        return json_frame(j);
    }
    if (require_tight_1d) {
        int N = cfg.n + 1 + static_cast<int>(rng.integer(0, 2));
        return random_tight_frame(cfg.n, N, rng.integer(0, ~0ULL >> 1));
    }
    int N = 2 + static_cast<int>(rng.integer(0, 2));
    std::vector<std::pair<SubspaceSpec, double>> parts;
    for (int j = 0; j < N; ++j) {
        int dim = 1 + static_cast<int>(rng.integer(0, static_cast<std::uint64_t>(cfg.n - 1)));
        parts.emplace_back(SubspaceSpec::random(cfg.n, dim, rng),
                           static_cast<double>(N) + static_cast<double>(rng.integer(0, 3)));
    }
    return FrameSpec(cfg.n, std::move(parts));
}

// ---- trial sampling and pure re-execution ---------------------------------

json sample_inputs(const std::string& kind, const RunConfig& cfg, Rng& rng) {
    json in{{"version", kReportVersion}, {"kind", kind}, {"tol", cfg.tol}};
    if (kind == "tensor") {
        std::vector<Eigen::Index> dims = parse_dims(cfg.dims);
        CoverSpec cover = cfg.subsets.empty()
                              ? parse_subsets("{1,2},{2,3},{3,1}")
                              : parse_subsets(cfg.subsets);
        if (dims.size() != 3 && cfg.subsets.empty()) {
            cover.subsets.clear();
            for (int i = 0; i < static_cast<int>(dims.size()); ++i)
                cover.subsets.push_back(IndexSubset({i}));
        }
        FactorSystem system(dims);
        Multiplicities mult = min_multiplicity(cover, system.factors());
        double q = cfg.q > 0.0 ? cfg.q : static_cast<double>(mult.min);
        in["dims"] = dims;
        json subs = json::array();
        for (const IndexSubset& J : cover.subsets) subs.push_back(J.members());
        in["subsets"] = subs;
        in["q"] = q;
        json hs = json::array();
        for (const IndexSubset& J : cover.subsets)
            hs.push_back(mat_json(random_hermitian(subset_dim(system, J), rng, 3.0 * rng.uniform()).mat()));
        in["hs"] = hs;
    } else if (kind == "ssa") {
        std::vector<Eigen::Index> dims = parse_dims(cfg.dims);
        FactorSystem system(dims);
        int n = system.factors();
        Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng.integer(0, static_cast<std::uint64_t>(system.total_dim() - 1)));
        Density rho = random_density_rank(system.total_dim(), rank, rng, TraceFunctional::Kind::Trace);
        auto random_subset = [&] {
            std::vector<int> m;
            while (m.empty())
                for (int i = 0; i < n; ++i)
                    if (rng.integer(0, 1)) m.push_back(i);
            return m;
        };
        in["dims"] = dims;
        in["rho"] = mat_json(rho.mat());
        in["J"] = random_subset();
        in["K"] = random_subset();
    } else if (kind == "clifford") {
        FrameSpec frame = load_or_random_frame(cfg, rng, false);
        CliffordAlgebra alg(cfg.n);
        in["n"] = cfg.n;
        in["frame"] = frame_json(frame);
        json hs = json::array();
        for (int j = 0; j < frame.size(); ++j)
            hs.push_back(cvec_json(
                random_subalgebra_hermitian(alg, frame.subspace(j), rng, 2.0 * rng.uniform()).coefficients()));
        in["hs"] = hs;
    } else if (kind == "gaussian") {
        FrameSpec frame = load_or_random_frame(cfg, rng, false);
        RealVector b(frame.ambient());
        for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = 2.0 * rng.normal();
        in["frame"] = frame_json(frame);
        in["b"] = rvec_json(b);
    } else if (kind == "cosh") {
        FrameSpec frame = load_or_random_frame(cfg, rng, true);
        RealVector b(frame.size());
        for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = 3.0 * (2.0 * rng.uniform() - 1.0);
        in["frame"] = frame_json(frame);
        in["b"] = rvec_json(b);
    } else if (kind == "psi") {
        FrameSpec frame = load_or_random_frame(cfg, rng, true);
        RealVector a = rng.uniform(0.0, 0.999) * random_unit_vector(frame.ambient(), rng);
        in["frame"] = frame_json(frame);
        in["a"] = rvec_json(a);
    } else if (kind == "duality") {
        in["type"] = rng.integer(0, 1) ? "tensor" : "clifford";
        in["sample_seed"] = rng.integer(0, ~0ULL >> 1);
        if (in["type"] == "clifford") {
            int nn = std::min(cfg.n, 4);
            in["n"] = nn;
            in["frame"] = frame_json(random_tight_frame(nn, nn + 1, rng.integer(0, ~0ULL >> 1)));
        }
    } else if (kind == "flow") {
        FrameSpec frame = load_or_random_frame(cfg, rng, false);
        CliffordAlgebra alg(cfg.n);
        Density rho = random_density(alg.matrix_dim(), rng, TraceFunctional::Kind::NormalizedTrace, 1e-6);
        in["n"] = cfg.n;
        in["frame"] = frame_json(frame);
        in["rho"] = cvec_json(alg.from_matrix(rho.mat()).coefficients());
        in["grid"] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
    } else if (kind == "gross") {
        CliffordAlgebra alg(cfg.n);
        Eigen::VectorXcd c(alg.basis_size());
        for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Cplx(rng.normal(), rng.normal());
        CliffordElement h(&alg, std::move(c));
        h = (h + h.adjoint()) * Cplx(0.5 / std::max(1e-12, h.coefficients().norm()), 0.0);
        CliffordElement a = alg.from_matrix(matrix_exp(HermitianOperator(alg.to_matrix(h))).mat());
        const char* fs[] = {"identity", "exp", "log"};
        in["n"] = cfg.n;
        in["a"] = cvec_json(a.coefficients());
        in["f"] = fs[rng.integer(0, 2)];
    } else {
        throw CLI::ValidationError("command", "unknown verify target " + kind);
    }
    return in;
}

VerificationReport execute(const json& in) {
    const std::string kind = in.at("kind");
    const double tol = in.value("tol", 1e-9);
    if (kind == "tensor") {
        FactorSystem system(in.at("dims").get<std::vector<Eigen::Index>>());
        CoverSpec cover;
        for (const json& s : in.at("subsets")) cover.subsets.push_back(IndexSubset(s.get<std::vector<int>>()));
        std::vector<HermitianOperator> hs;
        for (const json& h : in.at("hs")) hs.push_back(HermitianOperator(json_mat(h)));
        return verify_tensor_bl(system, cover, hs, in.at("q"), tol);
    }
    if (kind == "ssa") {
        FactorSystem system(in.at("dims").get<std::vector<Eigen::Index>>());
        Density rho(HermitianOperator(json_mat(in.at("rho"))), TraceFunctional::trace(system.total_dim()));
        return verify_ssa(system, rho, IndexSubset(in.at("J").get<std::vector<int>>()),
                          IndexSubset(in.at("K").get<std::vector<int>>()), tol);
    }
    if (kind == "clifford") {
        CliffordAlgebra alg(in.at("n"));
        FrameSpec frame = json_frame(in.at("frame"));
        std::vector<CliffordElement> hs;
        for (const json& h : in.at("hs")) hs.push_back(CliffordElement(&alg, json_cvec(h)));
        return verify_clifford_bl(alg, frame, hs, tol);
    }
    if (kind == "gaussian")
        return verify_gaussian_sa(json_rvec(in.at("b")), json_frame(in.at("frame")),
                                  in.value("tol", 1e-12));
    if (kind == "cosh")
        return verify_cosh_inequality(json_rvec(in.at("b")), json_frame(in.at("frame")),
                                      in.value("tol", 1e-12));
    if (kind == "psi")
        return verify_psi_subadditivity(json_rvec(in.at("a")), json_frame(in.at("frame")),
                                        in.value("tol", 1e-12));
    if (kind == "duality") {
        Rng rng(in.at("sample_seed").get<std::uint64_t>(), 0);
        if (in.at("type") == "tensor") {
            FactorSystem system({2, 2, 2});
            CoverSpec cover{{IndexSubset({0, 1}), IndexSubset({1, 2}), IndexSubset({2, 0})}};
            auto setting = make_tensor_setting(system, cover, {2.0, 2.0, 2.0});
            return verify_duality_equivalence(*setting, rng, 1, 1e-8);
        }
        auto algebra = std::make_shared<CliffordAlgebra>(in.at("n").get<int>());
        auto setting = make_clifford_setting(algebra, json_frame(in.at("frame")));
        return verify_duality_equivalence(*setting, rng, 1, 1e-8);
    }
    if (kind == "flow") {
        CliffordAlgebra alg(in.at("n"));
        CliffordElement rho(&alg, json_cvec(in.at("rho")));
        return verify_deficit_monotone(alg, rho, json_frame(in.at("frame")),
                                       in.at("grid").get<std::vector<double>>());
    }
    if (kind == "gross") {
        CliffordAlgebra alg(in.at("n"));
        CliffordElement a(&alg, json_cvec(in.at("a")));
        GrossFunction f = GrossFunction::Identity;
        if (in.at("f") == "exp") f = GrossFunction::Exp;
        if (in.at("f") == "log") f = GrossFunction::Log;
        return verify_gross_formula(alg, a, f, in.value("tol", 1e-10));
    }
    throw NumericalError("execute: unknown kind " + kind);
}

// ---- report streaming -----------------------------------------------------

std::string csv_header(bool timing) {
    std::string h = "setting,lhs,rhs,deficit,pass,condition_violated,tolerance,log_constant,seed,trial";
    if (timing) h += ",millis";
    return h;
}

std::string csv_row(const VerificationReport& r, bool timing) {
    std::ostringstream os;
    os.precision(17);
    os << r.setting << "," << r.lhs << "," << r.rhs << "," << r.deficit << "," << (r.pass ? 1 : 0)
       << "," << (r.condition_violated ? 1 : 0) << "," << r.tolerance << "," << r.log_constant
       << "," << r.seed << "," << r.trial;
    if (timing) os << "," << r.millis;
    return os.str();
}

int run_verify(const std::string& kind, const RunConfig& cfg) {
    const std::uint64_t T = cfg.trials;
    std::vector<VerificationReport> reports(T);
    std::atomic<std::uint64_t> next{0};
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(T)));
    std::vector<std::thread> pool;
    std::mutex err_mutex;
    std::string first_error;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::uint64_t t = next.fetch_add(1); t < T; t = next.fetch_add(1)) {
                try {
                    Rng rng(cfg.seed, t);
                    json in = sample_inputs(kind, cfg, rng);
                    auto t0 = std::chrono::steady_clock::now();
                    VerificationReport rep = execute(in);
                    auto t1 = std::chrono::steady_clock::now();
                    rep.seed = cfg.seed;
                    rep.trial = t;
                    rep.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
                    rep.inputs = std::move(in);
                    reports[t] = std::move(rep);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (first_error.empty()) first_error = e.what();
                }
            }
        });
    for (std::thread& th : pool) th.join();
    if (!first_error.empty()) throw NumericalError("verify " + kind + ": " + first_error);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        os = &file;
    }
    std::uint64_t passed = 0;
    if (cfg.format == "csv") *os << csv_header(!cfg.no_timing) << "\n";
    for (const VerificationReport& r : reports) {
        if (r.pass) ++passed;
        if (cfg.format == "csv")
            *os << csv_row(r, !cfg.no_timing) << "\n";
        else
            *os << r.to_json(!cfg.no_timing).dump() << "\n";
    }
    if (cfg.format != "csv") {
        json summary{{"summary",
                      {{"command", "verify " + kind}, {"trials", T}, {"passed", passed},
                       {"failed", T - passed}, {"seed", cfg.seed}}}};
        *os << summary.dump() << "\n";
    }
    return passed == T ? 0 : 1;
}

int run_search(const std::string& kind, const RunConfig& cfg) {
    SearchConfig sc;
    sc.seed = cfg.seed;
    json out;
    bool violation = false;
    Rng rng(cfg.seed, 0);
    if (kind == "tensor") {
        std::vector<Eigen::Index> dims = parse_dims(cfg.dims);
        CoverSpec cover = parse_subsets(cfg.subsets.empty() ? "{1},{2}" : cfg.subsets);
        Multiplicities mult = min_multiplicity(cover, static_cast<int>(dims.size()));
        double q = cfg.q > 0.0 ? cfg.q : static_cast<double>(mult.min);
        if (q > static_cast<double>(mult.min)) {
            ScalingReport sr = scaling_counterexample(q, cover, dims);
            out["command"] = "search tensor";
            out["q"] = q;
            out["p"] = mult.min;
            out["ratio"] = sr.ratio;
            json table = json::array();
            for (const ScalingRow& row : sr.schedule)
                table.push_back({{"dims", row.dims}, {"ratio", row.ratio}});
            out["schedule"] = table;
            out["violation_found"] = true;
            out["note"] = "violation found (expected): H = 0 ratio exceeds 1 for q > p";
            violation = true;
        } else {
            FactorSystem system(dims);
            SearchResult res = search_tensor(system, cover, q, sc);
            out = {{"command", "search tensor"}, {"q", q}, {"best_deficit", res.best_deficit},
                   {"violation_found", res.violation_found}, {"restart_trace", res.trace}};
            violation = res.violation_found;
        }
    } else if (kind == "clifford") {
        CliffordAlgebra alg(cfg.n);
        FrameSpec frame = load_or_random_frame(cfg, rng, false);
        SearchResult res = search_clifford(alg, frame, sc);
        FrameCondition cond = check_frame_condition(frame);
        out = {{"command", "search clifford"}, {"n", cfg.n},
               {"admissible", cond.admissible}, {"slack_min_eigenvalue", cond.min_eigenvalue},
               {"best_deficit", res.best_deficit}, {"best_a", rvec_json(res.best_params)},
               {"violation_found", res.violation_found}, {"restart_trace", res.trace}};
        violation = res.violation_found;
    } else if (kind == "gaussian") {
        FrameSpec frame = load_or_random_frame(cfg, rng, false);
        SearchResult res = search_gaussian(frame, sc);
        FrameCondition cond = check_frame_condition(frame);
        out = {{"command", "search gaussian"}, {"admissible", cond.admissible},
               {"slack_min_eigenvalue", cond.min_eigenvalue},
               {"best_deficit", res.best_deficit}, {"best_b", rvec_json(res.best_params)},
               {"violation_found", res.violation_found}, {"restart_trace", res.trace}};
        violation = res.violation_found;
    } else {
        throw CLI::ValidationError("command", "unknown search target " + kind);
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        os = &file;
    }
    *os << out.dump() << "\n";
    return violation ? 1 : 0;
}

int run_selftest_cmd(const RunConfig& cfg) {
    std::ofstream file;
    bool to_file = !cfg.out.empty();
    if (to_file) file.open(cfg.out);
    bool all = true;
    for (const CriterionResult& r : run_selftest(cfg.seed)) {
        std::string line = format_criterion(r);
        std::cout << line << "\n" << std::flush;
        if (to_file) {
            json j{{"criterion", r.index}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
            file << j.dump() << "\n";
        }
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int run_replay(const std::string& path, const RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "replay: cannot open " << path << "\n";
        return 2;
    }
    std::string line;
    bool all_ok = true;
    int replayed = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line.find("\"summary\"") != std::string::npos) continue;
        json rec = json::parse(line);
        if (!rec.contains("inputs")) continue;
        json inputs = rec["inputs"];
        if (inputs.value("version", 0) != kReportVersion) {
            std::cerr << "replay: record version mismatch\n";
            return 2;
        }
        if (cfg.tol_set) inputs["tol"] = cfg.tol;
        VerificationReport rep = execute(inputs);
        double old_deficit = rec.value("deficit", 0.0);
        bool deficit_match =
            std::abs(rep.deficit - old_deficit) <= 1e-14 * std::max(1.0, std::abs(old_deficit));
        rep.seed = rec.value("seed", std::uint64_t{0});
        rep.trial = rec.value("trial", std::uint64_t{0});
        json out = rep.to_json(false);
        out["replayed"] = true;
        out["deficit_match"] = deficit_match;
        std::cout << out.dump() << "\n";
        if (!deficit_match || !rep.pass) all_ok = false;
        ++replayed;
    }
    if (replayed == 0) {
        std::cerr << "replay: no replayable records in " << path << "\n";
        return 2;
    }
    return all_ok ? 0 : 1;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "master RNG seed")->capture_default_str();
    cmd->add_option("--trials", cfg.trials, "number of randomized trials")->capture_default_str();
    cmd->add_option("--n", cfg.n, "ambient dimension / generator count")->capture_default_str();
    cmd->add_option("--dims", cfg.dims, "tensor factor dimensions, e.g. 2,3,2")->capture_default_str();
    cmd->add_option("--subsets", cfg.subsets, "cover subsets, 1-based, e.g. {1,2},{2,3},{3,1}");
    cmd->add_option("--frame-file", cfg.frame_file, "JSON frame file {n, frames:[{basis,p}]}");
    cmd->add_option("--q", cfg.q, "exponent q (default: cover multiplicity p)");
    cmd->add_option("--tol", cfg.tol, "tolerance override")->each([&cfg](const std::string&) {
        cfg.tol_set = true;
    });
    cmd->add_option("--format", cfg.format, "report format: json | csv")->capture_default_str();
    cmd->add_option("--out", cfg.out, "write reports to this file instead of stdout");
    cmd->add_flag("--no-timing", cfg.no_timing, "omit per-trial timing for byte-stable output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-algebra inequality workbench"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* verify = app.add_subcommand("verify", "randomized verification suites");
    verify->require_subcommand(1);
    std::vector<std::string> verify_kinds = {"tensor", "clifford", "gaussian", "cosh", "psi",
                                             "ssa", "duality", "flow", "gross"};
    for (const std::string& k : verify_kinds) add_common(verify->add_subcommand(k), cfg);

    CLI::App* search = app.add_subcommand("search", "counterexample / worst-case search");
    search->require_subcommand(1);
    std::vector<std::string> search_kinds = {"tensor", "clifford", "gaussian"};
    for (const std::string& k : search_kinds) add_common(search->add_subcommand(k), cfg);

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the full acceptance battery");
    add_common(selftest_cmd, cfg);

    CLI::App* replay_cmd = app.add_subcommand("replay", "re-execute serialized trial records");
    std::string replay_path;
    replay_cmd->add_option("file", replay_path, "JSON-lines report file")->required();
    add_common(replay_cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto parsed_child = [](CLI::App* parent) -> std::string {
            for (CLI::App* sub : parent->get_subcommands())
                if (sub->parsed()) return sub->get_name();
            return {};
        };
        if (verify->parsed()) return run_verify(parsed_child(verify), cfg);
        if (search->parsed()) return run_search(parsed_child(search), cfg);
        if (selftest_cmd->parsed()) return run_selftest_cmd(cfg);
        if (replay_cmd->parsed()) return run_replay(replay_path, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
